"""Smooth models and noncommutative Hilbert schemes.

Framed quiver data, non-emptiness of Hilbert schemes, their Betti numbers via
multipartitions, cells indexed by n-forests, the forest generating functions,
and Poincare polynomials of smooth models from the P_d series.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .exactq import IntegralityError, PolyQ, RatFuncQ, as_integer_polynomial
from .counting import hn_series
from .quiver import DimVector, Quiver, QuiverError, add, box, sub, support, theta_value
from .series import GradedSeries, series_inverse, twisted_mul

FRAMING_VERTEX = "oo"


class SizeGuardError(RuntimeError):
    """An enumeration would exceed its configured size guard."""


def dot(n: Sequence[int], d: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(n, d))


@dataclass(frozen=True)
class FramedData:
    quiver: Quiver
    d: DimVector
    theta: tuple[int, ...]
    n: DimVector
    scale: int
    ext_quiver: Quiver
    ext_d: DimVector
    ext_theta: tuple[int, ...]


def default_scale(d: Sequence[int], theta: Sequence[int]) -> int:
    return 1 + 2 * sum(d) ** 2 * (1 + max((abs(x) for x in theta), default=0))


def build_framed(Q: Quiver, d: Sequence[int], theta: Sequence[int], n: Sequence[int],
                 scale: int | None = None) -> FramedData:
    """Extended quiver with a vertex ``oo`` carrying n_i arrows to each i.

    theta is first shifted and scaled so that theta(d) = 0; the extension is then
    (N * theta_i, theta(d) + 1) with d extended by 1 at ``oo``.
    """
    d, theta, n = Q.check(d), Q.check(theta, "stability"), Q.check(n, "framing")
    if min(n) < 0 or not any(n):
        raise QuiverError("framing must be non-negative and non-zero")
    if min(d) < 0:
        raise QuiverError("dimension vector has negative entries")
    N = default_scale(d, theta) if scale is None else int(scale)
    if N < 1:
        raise QuiverError("framing scale must be positive")
    total, t = sum(d), theta_value(theta, d)
    base = tuple(total * x - t for x in theta) if total else tuple(theta)
    name = FRAMING_VERTEX
    while name in Q.vertices:
        name += "'"
    arrows = Q.arrows + tuple((name, v) for v, k in zip(Q.vertices, n) for _ in range(k))
    ext = Quiver(Q.vertices + (name,), arrows)
    ext_theta = tuple(N * x for x in base) + (theta_value(base, d) + 1,)
    return FramedData(Q, d, theta, n, N, ext, d + (1,), ext_theta)


def _reaches(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> bool:
    supp = set(support(d))
    sources = [j for j in supp if n[j] > 0]
    seen, stack = set(sources), list(sources)
    while stack:
        i = stack.pop()
        for s, t in Q.arrow_pairs:
            if s == i and t in supp and t not in seen:
                seen.add(t)
                stack.append(t)
    return seen == supp


def hilb_nonempty(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> bool:
    d, n = Q.check(d), Q.check(n, "framing")
    for i in range(Q.n):
        ei = tuple(1 if k == i else 0 for k in range(Q.n))
        if n[i] < Q.euler_form(d, ei):
            return False
    return _reaches(Q, d, n)


def _multipartitions(Q: Quiver, d: DimVector, n: DimVector, budget: int) -> Iterator[tuple]:
    """Multipartitions of length d and weight <= budget satisfying, for every
    0 <= e < d, lambda^i_(d_i - e_i) < n_i - <e, i> for some i (index 0 never witnesses)."""
    slots = [(i, k) for i in range(Q.n) for k in range(1, d[i] + 1)]
    pos = {s: p for p, s in enumerate(slots)}
    conditions: list[list] = [[] for _ in range(len(slots) + 1)]
    for e in box(d):
        if e == d:
            continue
        terms = []
        for i in range(Q.n):
            if e[i] < d[i]:
                ei = tuple(1 if k == i else 0 for k in range(Q.n))
                terms.append((pos[(i, d[i] - e[i])], n[i] - Q.euler_form(e, ei)))
        if not terms:
            continue
        last = max(p for p, _ in terms)
        conditions[last + 1].append(terms)
    values = [0] * len(slots)

    def ok(upto: int) -> bool:
        for terms in conditions[upto]:
            if not any(values[p] < bound for p, bound in terms):
                return False
        return True

    def rec(p: int, remaining: int):
        if not ok(p):
            return
        if p == len(slots):
            yield tuple(values)
            return
        i, k = slots[p]
        cap = remaining if k == 1 else min(remaining, values[p - 1])
        for v in range(cap + 1):
            values[p] = v
            yield from rec(p + 1, remaining - v)
        values[p] = 0

    yield from rec(0, budget)


def hilb_betti(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> PolyQ:
    """Poincare polynomial (q = t^2) of Hilb_{d,n}(Q) from multipartitions."""
    d, n = Q.check(d), Q.check(n, "framing")
    top = dot(n, d) - Q.euler_form(d, d)
    if not any(d):
        return PolyQ((1,))
    if top < 0:
        return PolyQ()
    coeffs = [0] * (top + 1)
    for lam in _multipartitions(Q, d, n, top):
        coeffs[top - sum(lam)] += 1
    return PolyQ(coeffs)


# forests

def _trees_count_factory(Q: Quiver):
    out_arrows = [[t for s, t in Q.arrow_pairs if s == i] for i in range(Q.n)]

    @lru_cache(maxsize=None)
    def trees(i: int, d: DimVector) -> int:
        """Non-empty trees rooted at vertex i with dimension vector d."""
        if d[i] == 0:
            return 0
        rest = tuple(x - (1 if k == i else 0) for k, x in enumerate(d))
        return optional_product(tuple(out_arrows[i]), rest)

    @lru_cache(maxsize=None)
    def optional_product(targets: tuple, d: DimVector) -> int:
        """Tuples of possibly empty trees rooted at the given vertices, total d."""
        if not targets:
            return 1 if not any(d) else 0
        head, tail = targets[0], targets[1:]
        acc = optional_product(tail, d)
        for e in box(d):
            if any(e):
                t = trees(head, e)
                if t:
                    acc += t * optional_product(tail, sub(d, e))
        return acc

    return optional_product


_factories: dict = {}


def count_forests(Q: Quiver, d: Sequence[int], n: Sequence[int]) -> int:
    d, n = Q.check(d), Q.check(n, "framing")
    if Q not in _factories:
        _factories[Q] = _trees_count_factory(Q)
    slots = tuple(i for i in range(Q.n) for _ in range(n[i]))
    return _factories[Q](slots, d)


def arrow_ranks(Q: Quiver) -> list[int]:
    """Rank of each arrow in the order (source, target, declaration)."""
    order = sorted(range(len(Q.arrow_pairs)), key=lambda k: (Q.arrow_pairs[k], k))
    rank = [0] * len(order)
    for r, k in enumerate(order):
        rank[k] = r
    return rank


@dataclass(frozen=True)
class Forest:
    """Trees of paths, one per framing slot (vertex, copy); paths are arrow-index tuples."""
    slots: tuple[tuple[int, int], ...]
    trees: tuple[tuple[tuple[int, ...], ...], ...]

    def dimension_vector(self, Q: Quiver) -> DimVector:
        out = [0] * Q.n
        for (i, _), tree in zip(self.slots, self.trees):
            for path in tree:
                out[path_end(Q, i, path)] += 1
        return tuple(out)

    def corona(self, Q: Quiver) -> list[tuple[int, int, tuple[int, ...]]]:
        out = []
        for (i, j), tree in zip(self.slots, self.trees):
            members = set(tree)
            for path in tree:
                end = path_end(Q, i, path)
                for k, (s, _) in enumerate(Q.arrow_pairs):
                    if s == end and path + (k,) not in members:
                        out.append((i, j, path + (k,)))
        return sorted(out, key=lambda x: vertex_key(Q, x))

    def to_json(self, Q: Quiver) -> dict:
        return {
            "slots": [{"vertex": Q.vertices[i], "copy": j, "paths": [list(p) for p in tree]}
                      for (i, j), tree in zip(self.slots, self.trees)],
            "corona": [[Q.vertices[i], j, list(p)] for i, j, p in self.corona(Q)],
        }


def path_end(Q: Quiver, start: int, path: Sequence[int]) -> int:
    at = start
    for k in path:
        s, t = Q.arrow_pairs[k]
        if s != at:
            raise QuiverError("not a path")
        at = t
    return at


def vertex_key(Q: Quiver, node: tuple[int, int, tuple[int, ...]]):
    rank = arrow_ranks(Q)
    i, j, path = node
    return (i, j, tuple(rank[k] for k in path))


def _gen_trees(Q: Quiver, i: int, d: DimVector) -> Iterator[tuple[tuple[int, ...], ...]]:
    if d[i] == 0:
        return
    rest = tuple(x - (1 if k == i else 0) for k, x in enumerate(d))
    arrows = [k for k, (s, _) in enumerate(Q.arrow_pairs) if s == i]
    for children in _gen_optional(Q, arrows, rest):
        paths = [()]
        for k, sub_tree in children:
            paths.extend((k,) + p for p in sub_tree)
        yield tuple(paths)


def _gen_optional(Q: Quiver, arrows: list[int], d: DimVector):
    if not arrows:
        if not any(d):
            yield []
        return
    k, tail = arrows[0], arrows[1:]
    target = Q.arrow_pairs[k][1]
    for rest in _gen_optional(Q, tail, d):
        yield rest
    for e in box(d):
        if any(e):
            for tree in _gen_trees(Q, target, e):
                for rest in _gen_optional(Q, tail, sub(d, e)):
                    yield [(k, tree)] + rest


def _gen_forest(Q: Quiver, slots: list[int], d: DimVector):
    if not slots:
        if not any(d):
            yield []
        return
    head, tail = slots[0], slots[1:]
    for rest in _gen_forest(Q, tail, d):
        yield [()] + rest
    for e in box(d):
        if any(e):
            for tree in _gen_trees(Q, head, e):
                for rest in _gen_forest(Q, tail, sub(d, e)):
                    yield [tree] + rest


def enumerate_forests(Q: Quiver, d: Sequence[int], n: Sequence[int], max_enumerate: int = 100_000) -> list[Forest]:
    d, n = Q.check(d), Q.check(n, "framing")
    expected = count_forests(Q, d, n)
    if expected > max_enumerate:
        raise SizeGuardError(f"{expected} forests exceed the enumeration guard {max_enumerate}")
    rank = arrow_ranks(Q)
    slots = [(i, j) for i in range(Q.n) for j in range(1, n[i] + 1)]
    out = []
    for trees in _gen_forest(Q, [i for i, _ in slots], d):
        ordered = tuple(tuple(sorted(t, key=lambda p: tuple(rank[k] for k in p))) for t in trees)
        out.append(Forest(tuple(slots), ordered))
    out.sort(key=lambda f: [[tuple(rank[k] for k in p) for p in t] for t in f.trees])
    return out


# generating functions

def _trunc_mul(a: dict, b: dict, N: int) -> dict:
    out: dict = {}
    for d, x in a.items():
        for e, y in b.items():
            if sum(d) + sum(e) <= N:
                f = add(d, e)
                out[f] = out.get(f, 0) + x * y
    return out


def forest_genfun(Q: Quiver, n: Sequence[int], N: int) -> GradedSeries:
    """F_n = prod_i F_i^(n_i) with F_i = 1 + t_i prod_{i -> j} F_j, truncated at N."""
    n = Q.check(n, "framing")
    if N < 0:
        raise QuiverError("truncation must be non-negative")
    zero = (0,) * Q.n
    F = [{zero: 1} for _ in range(Q.n)]
    for _ in range(N + 1):
        new = []
        for i in range(Q.n):
            prod = {zero: 1}
            for s, t in Q.arrow_pairs:
                if s == i:
                    prod = _trunc_mul(prod, F[t], N - 1)
            ti = tuple(1 if k == i else 0 for k in range(Q.n))
            term = {add(d, ti): c for d, c in prod.items() if sum(d) + 1 <= N}
            term[zero] = term.get(zero, 0) + 1
            new.append(term)
        F = new
    out = {zero: 1}
    for i in range(Q.n):
        for _ in range(n[i]):
            out = _trunc_mul(out, F[i], N)
    return GradedSeries(Q, N, out)


def smooth_model_poincare(Q: Quiver, theta: Sequence[int], d: Sequence[int], n: Sequence[int]) -> PolyQ:
    """Degree-d coefficient of (sum P_e t^e)^-1 o (sum q^(n.e) P_e t^e) over the slope class."""
    d, theta, n = Q.check(d), Q.check(theta, "stability"), Q.check(n, "framing")
    if not any(d) or not any(n):
        raise QuiverError("smooth models need d != 0 and n != 0")
    A = hn_series(Q, theta, d)
    B = hn_series(Q, theta, d, weight=lambda e: RatFuncQ.qpow(dot(n, e)))
    value = twisted_mul(series_inverse(A, "twisted"), B)[d]
    try:
        return as_integer_polynomial(value)
    except IntegralityError as exc:
        raise IntegralityError(f"smooth model count for {d} is not an integer polynomial: {exc}") from None


def hilbert_growth_ratio(m: int, d: int) -> float:
    """chi_(d+1)/chi_d * ((d+1)/d)^(3/2) for Hilb_{d,1}(L_m)."""
    L = Quiver(("i",), (("i", "i"),) * m)
    coeffs = forest_genfun(L, (1,), d + 1)
    a, b = int(coeffs[(d,)](0)), int(coeffs[(d + 1,)](0))
    return b / a * ((d + 1) / d) ** 1.5
