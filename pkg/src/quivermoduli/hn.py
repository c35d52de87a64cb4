"""Harder-Narasimhan counting: the rational functions P_d(q) and coprime Betti numbers.

``P_d(q)`` equals ``|R_d^sst(F_q)| / |G_d(F_q)|``.  Two independent evaluations:

* ``direct``: the alternating sum over tuples (d^1, ..., d^s) with every proper
  partial sum of slope strictly above mu(d);
* ``recursive``: ``|R_d|/|G_d|`` minus the HN strata, i.e. tuples of strictly
  decreasing slopes of length at least two weighted by smaller P's.

Both sums are organised as dynamic programs over partial sums.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from typing import Sequence

from .exactq import (ONE, IntegralityError, PolyQ, RatFuncQ, _add, _mul, _neg,
                     as_integer_polynomial)
from .quiver import (DimVector, Quiver, QuiverError, add, box, slope, sub,
                     theta_coprime, theta_value)

_Q = RatFuncQ.q()


@lru_cache(maxsize=None)
def _gl_factor(n: int) -> RatFuncQ:
    """prod_{j=1..n} (1 - q^-j)^-1."""
    out = ONE
    for j in range(1, n + 1):
        out = out * (RatFuncQ.qpow(j) / (RatFuncQ.qpow(j) - 1))
    return out


def rd_over_gd(Q: Quiver, d: Sequence[int]) -> RatFuncQ:
    """|R_d| / |G_d| = q^(-<d,d>) prod_i prod_{j <= d_i} (1 - q^-j)^-1."""
    d = tuple(d)
    out = RatFuncQ.qpow(-Q.euler_form(d, d))
    for x in d:
        out = out * _gl_factor(x)
    return out


def gl_order(n: int, q: int) -> int:
    out = 1
    for k in range(n):
        out *= q ** n - q ** k
    return out


def group_order(d: Sequence[int], q: int) -> int:
    out = 1
    for x in d:
        out *= gl_order(x, q)
    return out


def _nonzero_box(d):
    return [e for e in box(d) if any(e)]


class _Cache:
    """Write-once memo; concurrent duplicate fills store equal values."""

    def __init__(self):
        self._data: dict = {}
        self._lock = threading.Lock()

    def get(self, key):
        return self._data.get(key)

    def put(self, key, value):
        with self._lock:
            return self._data.setdefault(key, value)

    def clear(self):
        with self._lock:
            self._data.clear()


_cache = _Cache()


def clear_cache():
    _cache.clear()


# Both sums run over Laurent polynomials q^v * (c_0 + c_1 q + ...) stored as
# (v, coeffs).  With Phi(r) = prod_i prod_{j <= r_i} (q^j - 1), every value
# Phi(d - p) * T(p) is a Laurent polynomial: Phi(e) * |R_e|/|G_e| is a monomial
# and Phi(r) / (Phi(e) Phi(r - e)) is a product of Gaussian binomials.

def _ladd(a, b):
    if not a[1]:
        return b
    if not b[1]:
        return a
    v = min(a[0], b[0])
    return v, _add((0,) * (a[0] - v) + a[1], (0,) * (b[0] - v) + b[1])


def _lmul(a, b):
    return a[0] + b[0], _mul(a[1], b[1])


@lru_cache(maxsize=None)
def _qbinom(n: int, k: int) -> tuple:
    if k < 0 or k > n:
        return ()
    if k == 0 or k == n:
        return (1,)
    return _add(_qbinom(n - 1, k - 1), (0,) * k + _qbinom(n - 1, k))


@lru_cache(maxsize=None)
def _multi_binom(r: DimVector, e: DimVector) -> tuple:
    out = (1,)
    for n, k in zip(r, e):
        out = _mul(out, _qbinom(n, k))
    return out


@lru_cache(maxsize=None)
def _phi(r: DimVector) -> tuple:
    out = (1,)
    for n in r:
        for j in range(1, n + 1):
            out = _mul(out, (-1,) + (0,) * (j - 1) + (1,))
    return out


def _mono(Q: Quiver, e: DimVector) -> int:
    """Exponent of Phi(e) |R_e|/|G_e| = q^(-<e,e> + sum e_i (e_i + 1) / 2)."""
    return -Q.euler_form(e, e) + sum(x * (x + 1) // 2 for x in e)


def _direct(Q: Quiver, theta, d: DimVector) -> tuple:
    n, td = sum(d), theta_value(theta, d)
    # T(p) = Phi(d - p) * (signed sum over admissible continuations from p)
    memo: dict = {d: (0, (1,))}

    def T(p: DimVector):
        hit = memo.get(p)
        if hit is not None:
            return hit
        rest = sub(d, p)
        acc = (0, ())
        for e in _nonzero_box(rest):
            f = add(p, e)
            # proper partial sums must have slope strictly above mu(d)
            if f != d and not theta_value(theta, f) * n > td * sum(f):
                continue
            term = _lmul((_mono(Q, e) - Q.euler_form(e, p), _multi_binom(rest, e)), T(f))
            acc = _ladd(acc, term)
        acc = (acc[0], _neg(acc[1]))
        memo[p] = acc
        return acc

    v, c = T((0,) * len(d))
    return v, _neg(c)


def _slope_ranks(theta, parts) -> dict:
    """Integer ranks with the same order as the slopes, to avoid Fraction comparisons."""
    slopes = {e: slope(theta, e) for e in parts}
    order = {s: k for k, s in enumerate(sorted(set(slopes.values())))}
    return {e: order[s] for e, s in slopes.items()}


def _recursive(Q: Quiver, theta, d: DimVector) -> tuple:
    parts = _nonzero_box(d)
    rank = _slope_ranks(theta, parts)
    P = {e: _tilde(Q, theta, e, "recursive") for e in parts if e != d}
    # U(p, r) = Phi(d - p) * (sum over continuations from p with next slope rank < r)
    memo: dict = {}

    def U(p: DimVector, r: int):
        if p == d:
            return 0, (1,)
        key = (p, r)
        hit = memo.get(key)
        if hit is not None:
            return hit
        rest = sub(d, p)
        acc = (0, ())
        for e in _nonzero_box(rest):
            if rank[e] < r:
                term = _lmul((-Q.euler_form(e, p), _multi_binom(rest, e)), P[e])
                acc = _ladd(acc, _lmul(term, U(add(p, e), rank[e])))
        memo[key] = acc
        return acc

    strata = (0, ())
    for e in parts:
        if e != d:
            strata = _ladd(strata, _lmul(_lmul((0, _multi_binom(d, e)), P[e]), U(e, rank[e])))
    return _ladd((_mono(Q, d), (1,)), (strata[0], _neg(strata[1])))


def _tilde(Q: Quiver, theta, d: DimVector, method: str) -> tuple:
    key = ("tilde", method, Q, theta, d)
    hit = _cache.get(key)
    if hit is None:
        hit = _cache.put(key, _direct(Q, theta, d) if method == "direct" else _recursive(Q, theta, d))
    return hit


def hn_rational(Q: Quiver, theta: Sequence[int], d: Sequence[int], method: str = "recursive") -> RatFuncQ:
    """P_d(q) for the quiver Q and stability theta."""
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    if not any(d):
        raise QuiverError("P_d is defined for non-zero d only")
    if min(d) < 0:
        raise QuiverError("dimension vector has negative entries")
    if method not in ("direct", "recursive"):
        raise ValueError(f"unknown method {method!r}")
    key = (method, Q, theta, d)
    hit = _cache.get(key)
    if hit is not None:
        return hit
    v, num = _tilde(Q, theta, d, method)
    return _cache.put(key, RatFuncQ(num, _phi(d)).shift(v))


def betti_coprime(Q: Quiver, theta: Sequence[int], d: Sequence[int]) -> PolyQ:
    """Poincare polynomial (in q = t^2) of the moduli space for theta-coprime d."""
    d = Q.check(d)
    theta = Q.check(theta, "stability")
    if not theta_coprime(Q, theta, d):
        raise QuiverError(f"{d} is not coprime for {theta}")
    value = (_Q - 1) * hn_rational(Q, theta, d)
    try:
        return as_integer_polynomial(value)
    except IntegralityError as exc:
        raise IntegralityError(f"(q-1)P_d is not an integer polynomial for {d}: {exc}") from None
