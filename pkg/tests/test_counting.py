import pytest
from hypothesis import given, strategies as st

from quivermoduli.counting import (Cycle, conjecture_scan, counting_report, enumerate_cycle_classes,
                                   euler_linear_term_check, primitive_cycle_classes, simple_count_poly,
                                   sst_count_poly, stable_count_poly, theorem_residual)
from quivermoduli.exactq import PolyQ, RatFuncQ
from quivermoduli.hn import betti_coprime
from quivermoduli.quiver import Quiver, QuiverError, normalize_theta, standard_quiver, theta_coprime

from conftest import cyclic3

q = PolyQ.q()


def test_s4_anchor():
    S4 = standard_quiver("subspace", 4)
    theta, d = (0, 0, 0, 0, -1), (1, 1, 1, 1, 2)
    assert stable_count_poly(S4, theta, d) == q - 2
    assert sst_count_poly(S4, theta, d) == q + 1


def test_k1_stable_count():
    assert stable_count_poly(standard_quiver("kronecker", 1), (1, 0), (1, 1)) == PolyQ([1])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_kronecker_11(m):
    K = standard_quiver("kronecker", m)
    assert sst_count_poly(K, (1, 0), (1, 1)).int_coeffs() == [1] * m


def test_simple_counts():
    L2 = standard_quiver("loop", 2)
    assert simple_count_poly(L2, (1,)) == q ** 2
    assert simple_count_poly(L2, (2,)) == q ** 4 * (q - 1)
    assert simple_count_poly(Quiver(("i",), ()), (2,)).is_zero()


def test_coprime_counts_agree():
    K3 = standard_quiver("kronecker", 3)
    b = betti_coprime(K3, (1, 0), (2, 3))
    assert stable_count_poly(K3, (1, 0), (2, 3)) == b == sst_count_poly(K3, (1, 0), (2, 3))


def test_report_json():
    K3 = standard_quiver("kronecker", 3)
    doc = counting_report(K3, (1, 0), (2, 3)).to_json(K3)
    assert doc["euler_stable"] == 13 and doc["d"] == {"i": 2, "j": 3}


def test_theorem_residual_is_one():
    K2 = standard_quiver("kronecker", 2)
    R = theorem_residual(K2, (1, 0), (2, 2))
    assert R.support() == [(0, 0)] and R[(0, 0)] == RatFuncQ(1)


def test_cycles():
    L2 = standard_quiver("loop", 2)
    assert [primitive_cycle_classes(L2, (d,)) for d in (1, 2, 3, 4)] == [2, 1, 2, 3]
    assert len(enumerate_cycle_classes(L2, (2,))) == 3
    assert Cycle((0, 0)).period() == 1 and not Cycle((0, 0)).is_primitive()
    assert primitive_cycle_classes(standard_quiver("kronecker", 1), (1, 1)) == 0
    assert primitive_cycle_classes(cyclic3(), (1, 1, 1)) == 1


def test_euler_linear_term():
    L2 = standard_quiver("loop", 2)
    assert euler_linear_term_check(L2, (2,))
    assert euler_linear_term_check(L2, (3,))
    assert euler_linear_term_check(L2, (1,), allow_coordinate=True)
    with pytest.raises(QuiverError):
        euler_linear_term_check(L2, (1,))
    assert euler_linear_term_check(cyclic3(), (1, 1, 1))


def test_conjecture_scan():
    rows = conjecture_scan(standard_quiver("loop", 2), (5,))
    assert len(rows) == 5 and all(r["positive"] for r in rows)
    rows = conjecture_scan(standard_quiver("loop", 1), (3,))
    assert rows[0]["poly"] == q and all(r["poly"].is_zero() for r in rows[1:])


@given(st.sampled_from([1, 2, 3]), st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(1, 3), st.integers(-3, 3))
def test_counts_invariant_under_theta_normalisation(m, d, theta, a, b):
    K = standard_quiver("kronecker", m)
    st_ = stable_count_poly(K, theta, d)
    sst = sst_count_poly(K, theta, d)
    for t2 in (tuple(a * x + b for x in theta), normalize_theta(theta, d)):
        assert stable_count_poly(K, t2, d) == st_
        assert sst_count_poly(K, t2, d) == sst
        assert theta_coprime(K, t2, d) == theta_coprime(K, theta, d)
