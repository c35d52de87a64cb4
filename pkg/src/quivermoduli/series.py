"""Truncated NI-graded power series over Q(q), twisted product, Exp and Log.

A series is a finite map from dimension vectors to ``RatFuncQ``; monomials of
total dimension above the truncation ``N`` (or outside an optional componentwise
``bound``) are discarded.  An optional slope filter ``(theta, mu)`` restricts
the support to the additive semigroup of vectors of slope ``mu``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exactq import ONE, ZERO, RatFuncQ
from .quiver import DimVector, Quiver, SlopeClass, add, leq, sub


class SeriesError(ValueError):
    pass


def mobius(k: int) -> int:
    result, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            result = -result
        p += 1
    return -result if k > 1 else result


class GradedSeries:
    """Element of Q(q)[[t_i]] truncated at total dimension ``N``."""

    __slots__ = ("quiver", "N", "bound", "slope", "coeffs")

    def __init__(self, quiver: Quiver, N: int, coeffs: Mapping | None = None, *,
                 slope: SlopeClass | None = None, bound: Sequence[int] | None = None):
        if N < 0:
            raise SeriesError("truncation must be non-negative")
        self.quiver = quiver
        self.N = N
        self.bound = None if bound is None else quiver.check(bound, "bound")
        self.slope = slope
        self.coeffs: dict[DimVector, RatFuncQ] = {}
        for d, c in (coeffs or {}).items():
            d = quiver.check(d)
            if min(d, default=0) < 0:
                raise SeriesError(f"negative exponent {d}")
            c = c if isinstance(c, RatFuncQ) else RatFuncQ(c)
            if c.is_zero() or not self.admits(d):
                continue
            if slope is not None and d not in slope:
                raise SeriesError(f"{d} is outside the slope class {slope.mu}")
            self.coeffs[d] = c

    # construction helpers
    def _like(self, coeffs: Mapping) -> "GradedSeries":
        out = GradedSeries.__new__(GradedSeries)
        out.quiver, out.N, out.bound, out.slope = self.quiver, self.N, self.bound, self.slope
        out.coeffs = {d: c for d, c in coeffs.items() if not c.is_zero()}
        return out

    @classmethod
    def one(cls, quiver: Quiver, N: int, **kw) -> "GradedSeries":
        return cls(quiver, N, {(0,) * quiver.n: ONE}, **kw)

    @property
    def zero_key(self) -> DimVector:
        return (0,) * self.quiver.n

    def admits(self, d: Sequence[int]) -> bool:
        if sum(d) > self.N:
            return False
        return self.bound is None or leq(d, self.bound)

    def __getitem__(self, d) -> RatFuncQ:
        return self.coeffs.get(tuple(d), ZERO)

    def support(self) -> list[DimVector]:
        return sorted(self.coeffs, key=lambda d: (sum(d), d))

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return self.coeffs == other.coeffs and self.N == other.N and self.quiver == other.quiver

    def __repr__(self):
        body = ", ".join(f"{d}: {c.pretty()}" for d, c in
                         ((d, self.coeffs[d]) for d in self.support()))
        return f"GradedSeries(N={self.N}, {{{body}}})"

    def _compatible(self, other: "GradedSeries"):
        if self.quiver != other.quiver:
            raise SeriesError("series over different quivers")
        if self.N != other.N or self.bound != other.bound:
            raise SeriesError("series with different truncations")

    # linear structure
    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._compatible(other)
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            out[d] = out.get(d, ZERO) + c
        return self._like(out)

    def __neg__(self):
        return self._like({d: -c for d, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, r) -> "GradedSeries":
        r = r if isinstance(r, RatFuncQ) else RatFuncQ(r)
        return self._like({d: r * c for d, c in self.coeffs.items()})

    def map_coeffs(self, fn: Callable[[DimVector, RatFuncQ], RatFuncQ]) -> "GradedSeries":
        return self._like({d: fn(d, c) for d, c in self.coeffs.items()})

    def constant_term(self) -> RatFuncQ:
        return self[self.zero_key]

    # products
    def _product(self, other: "GradedSeries", twist: bool) -> "GradedSeries":
        self._compatible(other)
        Q = self.quiver
        out: dict[DimVector, RatFuncQ] = {}
        for d, a in self.coeffs.items():
            for e, b in other.coeffs.items():
                f = add(d, e)
                if not self.admits(f):
                    continue
                term = a * b
                if twist:
                    k = Q.euler_form(d, e)
                    if k:
                        term = term.shift(-k)
                out[f] = out.get(f, ZERO) + term
        return self._like(out)

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        return self._product(other, twist=False)

    def psi(self, k: int) -> "GradedSeries":
        """Adams operation: q -> q^k and t^d -> t^(kd)."""
        out = {}
        for d, c in self.coeffs.items():
            kd = tuple(k * x for x in d)
            if self.admits(kd):
                out[kd] = c.psi(k)
        return self._like(out)

    def closure(self) -> list[DimVector]:
        """Admissible vectors reachable as finite sums of support elements."""
        gens = [d for d in self.coeffs if any(d)]
        seen = {self.zero_key}
        frontier = [self.zero_key]
        while frontier:
            nxt = []
            for d in frontier:
                for g in gens:
                    f = add(d, g)
                    if f not in seen and self.admits(f):
                        seen.add(f)
                        nxt.append(f)
            frontier = nxt
        return sorted(seen, key=lambda d: (sum(d), d))


def twisted_mul(A: GradedSeries, B: GradedSeries) -> GradedSeries:
    """(A o B)[f] = sum over d + e = f of q^(-<d,e>) A[d] B[e]."""
    return A._product(B, twist=True)


def series_inverse(A: GradedSeries, product: str = "twisted") -> GradedSeries:
    """Two-sided inverse of A for the twisted or the ordinary product."""
    if product not in ("twisted", "ordinary"):
        raise SeriesError(f"unknown product {product!r}")
    a0 = A.constant_term()
    if a0.is_zero():
        raise SeriesError("constant term is not a unit")
    twist = product == "twisted"
    Q = A.quiver
    inv0 = a0.inverse()
    X: dict[DimVector, RatFuncQ] = {A.zero_key: inv0}
    nonzero = [(d, c) for d, c in A.coeffs.items() if any(d)]
    for f in A.closure()[1:]:
        acc = ZERO
        for d, a in nonzero:
            if not leq(d, f):
                continue
            e = sub(f, d)
            x = X.get(e)
            if x is None or x.is_zero():
                continue
            term = a * x
            if twist:
                k = Q.euler_form(d, e)
                if k:
                    term = term.shift(-k)
            acc = acc + term
        if not acc.is_zero():
            X[f] = -(inv0 * acc)
    return A._like(X)


def series_exp(A: GradedSeries) -> GradedSeries:
    """exp for the ordinary product; requires A[0] = 0."""
    if not A.constant_term().is_zero():
        raise SeriesError("exp needs a series without constant term")
    E: dict[DimVector, RatFuncQ] = {A.zero_key: ONE}
    gens = [(d, A.coeffs[d] * sum(d)) for d in A.coeffs]
    for f in A.closure()[1:]:
        acc = ZERO
        for d, a in gens:
            if leq(d, f):
                x = E.get(sub(f, d))
                if x is not None:
                    acc = acc + a * x
        if not acc.is_zero():
            E[f] = acc * Fraction(1, sum(f))
    return A._like(E)


def series_log(B: GradedSeries) -> GradedSeries:
    """log for the ordinary product; requires B[0] = 1."""
    if B.constant_term() != ONE:
        raise SeriesError("log needs constant term 1")
    L: dict[DimVector, RatFuncQ] = {}
    nonzero = [(d, c) for d, c in B.coeffs.items() if any(d)]
    for f in B.closure()[1:]:
        acc = ZERO
        for d, b in nonzero:
            if d == f or not leq(d, f):
                continue
            e = sub(f, d)
            x = L.get(e)
            if x is not None:
                acc = acc + x * b * sum(e)
        val = B[f] - acc * Fraction(1, sum(f))
        if not val.is_zero():
            L[f] = val
    return B._like(L)


def _adams_sum(A: GradedSeries, weight: Callable[[int], Fraction]) -> GradedSeries:
    out = A._like({})
    top = max((sum(d) for d in A.coeffs if any(d)), default=0)
    if top == 0:
        return out
    for k in range(1, A.N + 1):
        w = weight(k)
        if w == 0:
            continue
        if k * min(sum(d) for d in A.coeffs if any(d)) > A.N:
            break
        out = out + A.psi(k).scale(w)
    return out


def plethystic_exp(A: GradedSeries) -> GradedSeries:
    """Exp(f) = exp(sum_k psi_k(f) / k)."""
    if not A.constant_term().is_zero():
        raise SeriesError("Exp needs a series without constant term")
    return series_exp(_adams_sum(A, lambda k: Fraction(1, k)))


def plethystic_log(B: GradedSeries) -> GradedSeries:
    """Log(f) = sum_k mu(k) psi_k(log f) / k with the Moebius function mu."""
    if B.constant_term() != ONE:
        raise SeriesError("Log needs constant term 1")
    return _adams_sum(series_log(B), lambda k: Fraction(mobius(k), k))
