"""Counting polynomials of stable, semistable and simple moduli; primitive cycles.

The stable series over a slope class is obtained in closed form: twisted-invert
the series of P_e, take the plethystic Log and multiply by (1 - q).  The
semistable series is the plethystic Exp of the stable one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactq import ONE, IntegralityError, PolyQ, RatFuncQ, as_integer_polynomial, expand_at_one, \
    is_positive_in_qminus1
from .hn import _Cache, hn_rational
from .quiver import DimVector, Quiver, QuiverError, SlopeClass, box, slope
from .series import GradedSeries, plethystic_exp, plethystic_log, series_inverse, twisted_mul

_Q = RatFuncQ.q()
_cache = _Cache()


def hn_series(Q: Quiver, theta: Sequence[int], d: Sequence[int], weight=None) -> GradedSeries:
    """1 + sum of P_e t^e over the slope class of d, for 0 < e <= d."""
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    cls = SlopeClass(theta, slope(theta, d))
    coeffs = {(0,) * Q.n: ONE}
    for e in box(d):
        if any(e) and e in cls:
            p = hn_rational(Q, theta, e)
            coeffs[e] = p if weight is None else weight(e) * p
    return GradedSeries(Q, sum(d), coeffs, slope=cls, bound=d)


def stable_series(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> GradedSeries:
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    if not any(d):
        raise QuiverError("counting polynomials need d != 0")
    key = ("stable", Q, theta, d)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    E = series_inverse(hn_series(Q, theta, d), "twisted")
    S = plethystic_log(E).scale(1 - _Q)
    return _cache.put(key, S)


def semistable_series(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> GradedSeries:
    key = ("sst", Q, tuple(theta), tuple(d))
    hit = _cache.get(key)
    if hit is not None:
        return hit
    return _cache.put(key, plethystic_exp(stable_series(Q, theta, d)))


def _integer(value: RatFuncQ, what: str, d) -> PolyQ:
    try:
        return as_integer_polynomial(value)
    except IntegralityError as exc:
        raise IntegralityError(f"{what} count for {d} is not an integer polynomial: {exc}") from None


def stable_count_poly(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> PolyQ:
    d = Q.check(d)
    return _integer(stable_series(Q, theta, d)[d], "stable", d)


def sst_count_poly(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> PolyQ:
    d = Q.check(d)
    return _integer(semistable_series(Q, theta, d)[d], "semistable", d)


def simple_count_poly(Q: Quiver, d: Sequence[int]) -> PolyQ:
    return stable_count_poly(Q, (0,) * Q.n, d)


@dataclass(frozen=True)
class CountingReport:
    d: DimVector
    theta: tuple[int, ...]
    P_stable: PolyQ
    P_semistable: PolyQ
    euler_stable: int
    euler_semistable: int
    positivity_in_qminus1: bool

    def to_json(self, Q: Quiver) -> dict:
        return {
            "d": Q.as_dict(self.d),
            "theta": Q.as_dict(self.theta),
            "stable": {**self.P_stable.to_json(), "pretty": self.P_stable.pretty()},
            "semistable": {**self.P_semistable.to_json(), "pretty": self.P_semistable.pretty()},
            "euler_stable": self.euler_stable,
            "euler_semistable": self.euler_semistable,
            "positivity_in_qminus1": self.positivity_in_qminus1,
        }


def counting_report(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> CountingReport:
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    st = stable_count_poly(Q, theta, d)
    sst = sst_count_poly(Q, theta, d)
    return CountingReport(d, theta, st, sst, int(st(1)), int(sst(1)), is_positive_in_qminus1(st))


def theorem_residual(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> GradedSeries:
    """(sum P_e t^e) o Exp(stable / (1 - q)); equals 1 when the counts are right."""
    S = stable_series(Q, theta, d)
    return twisted_mul(hn_series(Q, theta, d), plethystic_exp(S.scale(ONE / (1 - _Q))))


# cycles

@dataclass(frozen=True)
class Cycle:
    """Closed path; ``arrows[k]`` is traversed k-th (arrow indices of the quiver)."""
    arrows: tuple[int, ...]

    def canonical(self) -> "Cycle":
        a = self.arrows
        return Cycle(min(a[k:] + a[:k] for k in range(len(a))))

    def period(self) -> int:
        a, n = self.arrows, len(self.arrows)
        for p in range(1, n + 1):
            if n % p == 0 and a[p:] + a[:p] == a:
                return p
        return n

    def is_primitive(self) -> bool:
        return self.period() == len(self.arrows)

    def dimension_vector(self, Q: Quiver) -> DimVector:
        out = [0] * Q.n
        for k in self.arrows:
            out[Q.arrow_pairs[k][0]] += 1
        return tuple(out)

    def vertices(self, Q: Quiver) -> list[int]:
        return [Q.arrow_pairs[k][0] for k in self.arrows]


def enumerate_cycle_classes(Q: Quiver, d: Sequence[int]) -> list[Cycle]:
    """Canonical representatives of cyclic equivalence classes with visit counts d."""
    d = Q.check(d)
    length = sum(d)
    if length == 0:
        return []
    pairs = Q.arrow_pairs
    out: set[tuple[int, ...]] = set()
    remaining = list(d)

    def walk(word: list[int], at: int, start: int):
        if len(word) == length:
            if at == start:
                out.add(Cycle(tuple(word)).canonical().arrows)
            return
        for k, (s, t) in enumerate(pairs):
            if s == at and remaining[s] > 0:
                remaining[s] -= 1
                word.append(k)
                walk(word, t, start)
                word.pop()
                remaining[s] += 1

    # every class has a rotation starting at the smallest vertex of its support
    first = min(i for i, x in enumerate(d) if x)
    walk([], first, first)
    return [Cycle(w) for w in sorted(out)]


def primitive_cycle_classes(Q: Quiver, d: Sequence[int]) -> int:
    d = Q.check(d)
    if not any(d):
        raise QuiverError("cycles need d != 0")
    return sum(1 for c in enumerate_cycle_classes(Q, d) if c.is_primitive())


def euler_linear_term_check(Q: Quiver, d: Sequence[int], allow_coordinate: bool = False) -> bool:
    """Constant Taylor term at q = 1 vanishes and the linear term counts primitive cycles."""
    d = Q.check(d)
    coordinate = sum(d) == 1
    if coordinate and not allow_coordinate:
        raise QuiverError("coordinate vectors are excluded from the linear-term check")
    c0, c1 = expand_at_one(simple_count_poly(Q, d), 1)
    count = primitive_cycle_classes(Q, d)
    if coordinate:
        return c1 == count
    return c0 == 0 and c1 == count


def conjecture_scan(Q: Quiver, d_max: Sequence[int]) -> list[dict]:
    """Positivity in N[q-1] of every simple counting polynomial below d_max (report only)."""
    d_max = Q.check(d_max)
    rows = []
    if not any(d_max):
        return rows
    series = stable_series(Q, (0,) * Q.n, d_max)
    for e in box(d_max):
        if not any(e):
            continue
        p = _integer(series[e], "simple", e)
        rows.append({"d": e, "poly": p, "positive": is_positive_in_qminus1(p)})
    return rows
