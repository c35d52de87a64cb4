from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quivermoduli.exactq import ONE, RatFuncQ
from quivermoduli.quiver import SlopeClass, box, standard_quiver
from quivermoduli.series import (GradedSeries, SeriesError, mobius, plethystic_exp, plethystic_log,
                                 series_exp, series_inverse, series_log, twisted_mul)

K2 = standard_quiver("kronecker", 2)
L1 = standard_quiver("loop", 1)
q = RatFuncQ.q()
KEYS = [k for k in box((2, 2)) if sum(k) <= 3]


@st.composite
def series(draw, constant=None, N=3):
    coeffs = {}
    for k in KEYS:
        if not any(k):
            continue
        if draw(st.booleans()):
            coeffs[k] = RatFuncQ(draw(st.lists(st.integers(-2, 2), min_size=1, max_size=3)))
    if constant is not None:
        coeffs[(0, 0)] = constant
    return GradedSeries(K2, N, coeffs)


def test_mobius():
    assert [mobius(k) for k in range(1, 11)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_exp_of_loop_variable():
    # Exp(t) = 1/(1-t) in one variable
    t = GradedSeries(L1, 5, {(1,): ONE})
    E = plethystic_exp(t)
    assert all(E[(k,)] == ONE for k in range(6))


def test_exp_of_q_weighted():
    # Exp(q t) = 1/(1 - q t)
    E = plethystic_exp(GradedSeries(L1, 4, {(1,): q}))
    assert all(E[(k,)] == q ** k for k in range(5))


def test_truncation_and_errors():
    A = GradedSeries(L1, 2, {(3,): ONE, (1,): ONE})
    assert A.support() == [(1,)]
    with pytest.raises(SeriesError):
        plethystic_exp(GradedSeries(L1, 2, {(0,): ONE}))
    with pytest.raises(SeriesError):
        plethystic_log(GradedSeries(L1, 2, {(1,): ONE}))
    with pytest.raises(SeriesError):
        GradedSeries(K2, 3, {(1, 0): ONE}, slope=SlopeClass((1, 0), Fraction(0)))
    with pytest.raises(SeriesError):
        series_inverse(GradedSeries(L1, 2, {(1,): ONE}))


def test_bound_truncation():
    A = GradedSeries(K2, 4, {(2, 0): ONE, (1, 1): ONE}, bound=(1, 3))
    assert A.support() == [(1, 1)]


@given(series(constant=RatFuncQ(0)))
def test_plethystic_round_trip(A):
    assert plethystic_log(plethystic_exp(A)) == A


@given(series(constant=ONE))
def test_plethystic_round_trip_other_way(B):
    assert plethystic_exp(plethystic_log(B)) == B


@given(series(constant=RatFuncQ(0)))
def test_exp_log_ordinary(A):
    assert series_log(series_exp(A)) == A


@given(series(constant=ONE), series(constant=ONE), series(constant=ONE))
def test_twisted_associativity(A, B, C):
    assert twisted_mul(twisted_mul(A, B), C) == twisted_mul(A, twisted_mul(B, C))


@given(series(constant=ONE))
def test_twisted_inverse_two_sided(A):
    inv = series_inverse(A, "twisted")
    one = GradedSeries.one(K2, 3)
    assert twisted_mul(A, inv) == one
    assert twisted_mul(inv, A) == one
    assert series_inverse(A, "ordinary") * A == one
