
import pytest
from hypothesis import given, strategies as st

from quivermoduli.exactq import RatFuncQ
from quivermoduli.hn import betti_coprime, gl_order, group_order, hn_rational, rd_over_gd
from quivermoduli.quiver import Quiver, QuiverError, normalize_theta, standard_quiver

q = RatFuncQ.q()
K1 = standard_quiver("kronecker", 1)


def test_k1_worked_example():
    assert hn_rational(K1, (1, 0), (1, 1)) == 1 / (q - 1)
    assert hn_rational(K1, (1, 0), (1, 1), method="direct") == 1 / (q - 1)
    assert betti_coprime(K1, (1, 0), (1, 1)).pretty() == "1"


def test_single_vertex_theta_zero():
    A1 = Quiver(("i",), ())
    expected = q ** -4 / ((1 - q ** -1) * (1 - q ** -2))
    assert hn_rational(A1, (0,), (2,)) == expected
    assert rd_over_gd(A1, (2,)) == expected


def test_group_orders():
    assert gl_order(2, 2) == 6
    assert group_order((1, 2), 3) == 2 * 48


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_kronecker_11_is_projective_space(m):
    K = standard_quiver("kronecker", m)
    assert betti_coprime(K, (1, 0), (1, 1)).int_coeffs() == [1] * m


def test_kronecker_23_m3():
    K3 = standard_quiver("kronecker", 3)
    assert betti_coprime(K3, (1, 0), (2, 3))(1) == 13


def test_betti_requires_coprime():
    with pytest.raises(QuiverError):
        betti_coprime(standard_quiver("kronecker", 2), (1, 0), (2, 2))


def test_theta_zero_is_whole_space():
    L2 = standard_quiver("loop", 2)
    for d in [(1,), (2,), (3,)]:
        assert hn_rational(L2, (0,), d) == rd_over_gd(L2, d)


QUIVERS = [standard_quiver("kronecker", m) for m in (1, 2, 3)]


@given(st.sampled_from(QUIVERS), st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_direct_equals_recursive(Q, d, theta):
    assert hn_rational(Q, theta, d, "direct") == hn_rational(Q, theta, d, "recursive")


@given(st.sampled_from(QUIVERS), st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(1, 3), st.integers(-3, 3))
def test_theta_normalisation_invariance(Q, d, theta, a, b):
    # theta -> a*theta + b*dim and theta -> |d| theta - theta(d) dim leave P_d unchanged
    base = hn_rational(Q, theta, d)
    assert hn_rational(Q, tuple(a * x + b for x in theta), d) == base
    assert hn_rational(Q, normalize_theta(theta, d), d) == base
