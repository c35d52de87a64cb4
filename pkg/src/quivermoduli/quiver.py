"""Quivers, dimension vectors, stabilities, the Euler form and slopes.

Dimension vectors and stabilities are plain tuples of ints aligned to the
declared vertex order of a :class:`Quiver`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

DimVector = tuple[int, ...]
Stability = tuple[int, ...]


class QuiverError(ValueError):
    """Invalid quiver data or mismatched vertex data."""


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...] = ()
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((str(a), str(b)) for a, b in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("vertex identifiers must be distinct")
        index = {v: k for k, v in enumerate(self.vertices)}
        for a, b in self.arrows:
            if a not in index or b not in index:
                raise QuiverError(f"arrow ({a!r}, {b!r}) has an undeclared endpoint")
        object.__setattr__(self, "_index", index)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise QuiverError(f"unknown vertex {v!r}") from None

    @cached_property
    def arrow_pairs(self) -> tuple[tuple[int, int], ...]:
        """Arrows as (source index, target index)."""
        return tuple((self._index[a], self._index[b]) for a, b in self.arrows)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        """``adjacency[i][j]`` is the number of arrows i -> j."""
        m = [[0] * self.n for _ in range(self.n)]
        for s, t in self.arrow_pairs:
            m[s][t] += 1
        return tuple(tuple(r) for r in m)

    def loops_at(self, i: int) -> int:
        return self.adjacency[i][i]

    def out_arrows(self, i: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.arrow_pairs) if s == i]

    @cached_property
    def has_oriented_cycle(self) -> bool:
        indeg = [0] * self.n
        for s, t in self.arrow_pairs:
            indeg[t] += 1
        stack = [i for i in range(self.n) if indeg[i] == 0]
        seen = 0
        while stack:
            i = stack.pop()
            seen += 1
            for s, t in self.arrow_pairs:
                if s == i:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        stack.append(t)
        return seen < self.n

    def check(self, d: Sequence[int], what: str = "dimension vector") -> DimVector:
        d = tuple(int(x) for x in d)
        if len(d) != self.n:
            raise QuiverError(f"{what} has {len(d)} entries, quiver has {self.n} vertices")
        return d

    def vector(self, data: Mapping[str, int] | Sequence[int] | int, what: str = "dimension vector") -> DimVector:
        """Coerce a mapping ``{vertex: value}``, a sequence, or (single vertex) an int."""
        if isinstance(data, Mapping):
            out = [0] * self.n
            for k, v in data.items():
                out[self.index(str(k))] = int(v)
            return tuple(out)
        if isinstance(data, int):
            if self.n != 1:
                raise QuiverError(f"{what}: a bare integer needs a one-vertex quiver")
            return (data,)
        return self.check(data, what)

    def as_dict(self, d: Sequence[int]) -> dict[str, int]:
        return {v: int(x) for v, x in zip(self.vertices, d)}

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "arrows": [{"from": a, "to": b} for a, b in self.arrows]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Quiver":
        try:
            return cls(tuple(obj["vertices"]),
                       tuple((a["from"], a["to"]) for a in obj.get("arrows", ())))
        except (KeyError, TypeError) as exc:
            raise QuiverError(f"malformed quiver JSON: {exc}") from None

    # Euler form
    def euler_form(self, d: Sequence[int], e: Sequence[int]) -> int:
        return (sum(x * y for x, y in zip(d, e))
                - sum(d[s] * e[t] for s, t in self.arrow_pairs))

    def symmetrized(self, d: Sequence[int], e: Sequence[int]) -> int:
        return self.euler_form(d, e) + self.euler_form(e, d)


def standard_quiver(kind: str, m: int) -> Quiver:
    """The m-loop quiver, the m-arrow Kronecker quiver or the m-subspace quiver."""
    if m < 1:
        raise QuiverError("m must be at least 1")
    if kind == "loop":
        return Quiver(("i",), (("i", "i"),) * m)
    if kind == "kronecker":
        return Quiver(("i", "j"), (("i", "j"),) * m)
    if kind == "subspace":
        sources = tuple(f"i{k}" for k in range(1, m + 1))
        return Quiver(sources + ("j",), tuple((s, "j") for s in sources))
    raise QuiverError(f"unknown quiver kind {kind!r}")


def parse_builtin(name: str) -> Quiver:
    """Parse ``loop:m``, ``kronecker:m`` or ``subspace:m``."""
    kind, _, m = name.partition(":")
    try:
        return standard_quiver(kind, int(m))
    except ValueError as exc:
        raise QuiverError(f"bad builtin quiver {name!r}: {exc}") from None


def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    return Q.euler_form(Q.check(d), Q.check(e))


def total(d: Iterable[int]) -> int:
    return sum(d)


def support(d: Sequence[int]) -> tuple[int, ...]:
    return tuple(i for i, x in enumerate(d) if x != 0)


def add(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x + y for x, y in zip(d, e))


def sub(d: Sequence[int], e: Sequence[int]) -> DimVector:
    return tuple(x - y for x, y in zip(d, e))


def leq(e: Sequence[int], d: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(e, d))


def unit(n: int, i: int) -> DimVector:
    return tuple(1 if k == i else 0 for k in range(n))


def box(d: Sequence[int]) -> Iterator[DimVector]:
    """All e with 0 <= e <= d componentwise, in lexicographic order."""
    return itertools.product(*(range(x + 1) for x in d))


def theta_value(theta: Sequence[int], d: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(theta, d))


def slope(theta: Sequence[int], d: Sequence[int]) -> Fraction:
    n = sum(d)
    if n == 0:
        raise QuiverError("slope of the zero dimension vector is undefined")
    return Fraction(theta_value(theta, d), n)


class SlopeClass:
    """Non-zero dimension vectors of a fixed slope, together with zero."""

    def __init__(self, theta: Sequence[int], mu: Fraction):
        self.theta = tuple(theta)
        self.mu = Fraction(mu)

    def __contains__(self, d: Sequence[int]) -> bool:
        n = sum(d)
        return n == 0 or theta_value(self.theta, d) == self.mu * n

    def __repr__(self):
        return f"SlopeClass(mu={self.mu})"


def theta_coprime(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> bool:
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    mu = slope(theta, d)
    for e in box(d):
        if e == d or not any(e):
            continue
        if slope(theta, e) == mu:
            return False
    return True


def moduli_dimension(Q: Quiver, d: Sequence[int]) -> int:
    d = Q.check(d)
    return 1 - Q.euler_form(d, d)


def normalize_theta(theta: Sequence[int], d: Sequence[int]) -> Stability:
    """``|d| * theta - theta(d) * dim``: same slope order, slope zero at d."""
    n, t = sum(d), theta_value(theta, d)
    return tuple(n * x - t for x in theta)
