import pytest
from hypothesis import given, strategies as st

from quivermoduli.exactq import PolyQ
from quivermoduli.framed import (SizeGuardError, build_framed, count_forests, enumerate_forests,
                                 forest_genfun, hilb_betti, hilb_nonempty, hilbert_growth_ratio,
                                 smooth_model_poincare)
from quivermoduli.hn import betti_coprime
from quivermoduli.quiver import QuiverError, box, standard_quiver, theta_coprime

q = PolyQ.q()
L1, L2 = standard_quiver("loop", 1), standard_quiver("loop", 2)
K1 = standard_quiver("kronecker", 1)


def test_build_framed():
    F = build_framed(L1, (1,), (0,), (1,))
    assert F.ext_quiver.n == 2 and F.ext_d == (1, 1)
    assert sorted(F.ext_quiver.arrows) == [("i", "i"), ("oo", "i")]
    F = build_framed(K1, (1, 1), (1, 0), (1, 0))
    assert F.ext_quiver.n == 3 and F.ext_d == (1, 1, 1)
    with pytest.raises(QuiverError):
        build_framed(K1, (1, 1), (1, 0), (0, 0))


@given(st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
       st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any),
       st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
def test_framed_data_coprime(d, n, theta):
    F = build_framed(standard_quiver("kronecker", 2), d, theta, n)
    assert theta_coprime(F.ext_quiver, F.ext_theta, F.ext_d)


def test_hilb_nonempty():
    assert hilb_nonempty(L1, (3,), (1,))
    assert not hilb_nonempty(K1, (0, 1), (1, 0))
    assert hilb_nonempty(K1, (1, 1), (1, 0))


def test_hilb_betti():
    assert hilb_betti(L2, (2,), (1,)) == q ** 6 + q ** 5
    for m in (1, 2, 3):
        assert hilb_betti(standard_quiver("loop", m), (1,), (1,)) == q ** m
    assert hilb_betti(L2, (0,), (1,)) == PolyQ([1])


def test_forests():
    assert count_forests(L2, (2,), (1,)) == 2
    assert count_forests(L2, (3,), (1,)) == 5
    assert count_forests(L2, (0,), (1,)) == 1
    fs = enumerate_forests(L2, (3,), (1,))
    assert len(fs) == 5 and all(f.dimension_vector(L2) == (3,) for f in fs)
    with pytest.raises(SizeGuardError):
        enumerate_forests(L2, (6,), (1,), max_enumerate=10)


def test_forest_genfun():
    G = forest_genfun(L2, (1,), 4)
    assert [int(G[(k,)](0)) for k in range(5)] == [1, 1, 2, 5, 14]
    G = forest_genfun(K1, (1, 0), 4)
    assert {e: int(G[e](0)) for e in G.support()} == {(0, 0): 1, (1, 0): 1, (1, 1): 1}


def test_triangle_small():
    Q = standard_quiver("kronecker", 2)
    G = forest_genfun(Q, (1, 1), 4)
    for d in box((2, 2)):
        n1 = int(hilb_betti(Q, d, (1, 1))(1))
        assert n1 == count_forests(Q, d, (1, 1)) == int(G[d](0))


def test_smooth_model():
    assert smooth_model_poincare(K1, (1, 0), (1, 1), (1, 0)) == PolyQ([1])
    assert smooth_model_poincare(L2, (0,), (2,), (1,)) == hilb_betti(L2, (2,), (1,))
    K3 = standard_quiver("kronecker", 3)
    n = (1, 1)
    factor = sum((q ** k for k in range(5)), PolyQ())
    assert smooth_model_poincare(K3, (1, 0), (2, 3), n) == betti_coprime(K3, (1, 0), (2, 3)) * factor


def test_growth_ratio():
    assert abs(hilbert_growth_ratio(2, 20) - 4) / 4 < 0.02
