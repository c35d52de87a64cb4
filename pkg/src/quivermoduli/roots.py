"""Reflections and the classification of dimension vectors into real roots,
imaginary roots and non-roots via the fundamental domain."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .quiver import DimVector, Quiver, QuiverError, support, unit


def reflect(Q: Quiver, i: int, d: Sequence[int]) -> DimVector:
    """s_i(d) = d - (d, e_i) e_i for a loop-free vertex i."""
    d = Q.check(d)
    if Q.loops_at(i):
        raise QuiverError(f"no reflection at vertex {Q.vertices[i]!r}: it carries a loop")
    c = Q.symmetrized(d, unit(Q.n, i))
    return tuple(x - c if k == i else x for k, x in enumerate(d))


def support_connected(Q: Quiver, d: Sequence[int]) -> bool:
    supp = set(support(d))
    if not supp:
        return False
    start = min(supp)
    seen, stack = {start}, [start]
    while stack:
        i = stack.pop()
        for s, t in Q.arrow_pairs:
            for a, b in ((s, t), (t, s)):
                if a == i and b in supp and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return seen == supp


def in_fundamental_domain(Q: Quiver, d: Sequence[int]) -> bool:
    return support_connected(Q, d) and all(
        Q.symmetrized(d, unit(Q.n, i)) <= 0 for i in range(Q.n))


@dataclass(frozen=True)
class RootClassification:
    verdict: str  # "real" | "imaginary" | "not_a_root"
    witness: tuple[int, ...] = ()
    endpoint: DimVector = ()
    parameters: int | None = None

    def to_json(self, Q: Quiver) -> dict:
        return {
            "verdict": self.verdict,
            "witness": [Q.vertices[i] for i in self.witness],
            "endpoint": list(self.endpoint),
            "parameters": self.parameters,
        }


def classify_root(Q: Quiver, d: Sequence[int], allow_cycles: bool = False) -> RootClassification:
    """Reflect at the smallest vertex with (d, e_i) > 0 until d is a coordinate
    vector (real root), lies in the fundamental domain (imaginary root) or
    leaves the positive cone (not a root).

    ``allow_cycles`` lifts the refusal for quivers with oriented cycles.
    """
    d = Q.check(d)
    if Q.has_oriented_cycle and not allow_cycles:
        raise QuiverError("root classification needs a quiver without oriented cycles")
    if not any(d):
        raise QuiverError("zero vector")
    if min(d) < 0:
        raise QuiverError("classify_root takes a non-negative vector")
    start = d
    witness: list[int] = []
    while True:
        if min(d) < 0:
            return RootClassification("not_a_root", tuple(witness), d)
        if sum(d) == 1 and not Q.loops_at(d.index(1)):
            return RootClassification("real", tuple(witness), d)
        if in_fundamental_domain(Q, d):
            return RootClassification("imaginary", tuple(witness), d,
                                      1 - Q.euler_form(start, start))
        positive = [i for i in range(Q.n) if Q.symmetrized(d, unit(Q.n, i)) > 0]
        if not positive:
            # (d, e_i) <= 0 everywhere but disconnected support
            return RootClassification("not_a_root", tuple(witness), d)
        i = positive[0]
        new = reflect(Q, i, d)
        assert sum(new) < sum(d), "reflection did not decrease the total dimension"
        witness.append(i)
        d = new
