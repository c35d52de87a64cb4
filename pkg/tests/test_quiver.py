import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quivermoduli.quiver import (Quiver, QuiverError, box, normalize_theta, parse_builtin, slope,
                                 standard_quiver, theta_coprime, theta_value)


def test_builtins():
    assert standard_quiver("loop", 3).arrows == (("i", "i"),) * 3
    K = parse_builtin("kronecker:2")
    assert K.vertices == ("i", "j") and len(K.arrows) == 2
    S = parse_builtin("subspace:3")
    assert S.vertices == ("i1", "i2", "i3", "j")
    with pytest.raises(QuiverError):
        parse_builtin("kronecker:x")
    with pytest.raises(QuiverError):
        parse_builtin("dynkin:2")


def test_euler_form():
    K = standard_quiver("kronecker", 3)
    assert K.euler_form((1, 0), (0, 1)) == -3
    assert K.euler_form((0, 1), (1, 0)) == 0
    assert K.euler_form((2, 3), (2, 3)) == 4 + 9 - 18


def test_vector_coercion():
    K = standard_quiver("kronecker", 1)
    assert K.vector({"i": 2}) == (2, 0)
    assert K.vector([1, 1]) == (1, 1)
    with pytest.raises(QuiverError):
        K.vector({"x": 1})
    with pytest.raises(QuiverError):
        K.vector(3)
    assert standard_quiver("loop", 1).vector(3) == (3,)


def test_json_roundtrip():
    K = standard_quiver("subspace", 2)
    assert Quiver.from_json(json.loads(json.dumps(K.to_json()))) == K
    with pytest.raises(QuiverError):
        Quiver.from_json({"arrows": []})


def test_oriented_cycles():
    assert standard_quiver("loop", 1).has_oriented_cycle
    assert not standard_quiver("kronecker", 2).has_oriented_cycle


def test_slope_and_coprime():
    assert slope((1, 0), (2, 3)) == Fraction(2, 5)
    K = standard_quiver("kronecker", 3)
    assert theta_coprime(K, (1, 0), (2, 3))
    assert not theta_coprime(K, (1, 0), (2, 2))
    with pytest.raises(QuiverError):
        slope((1, 0), (0, 0))


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
       st.lists(st.integers(0, 3), min_size=2, max_size=2).filter(any),
       st.lists(st.integers(0, 3), min_size=2, max_size=2).filter(any),
       st.integers(1, 4), st.integers(-4, 4))
def test_slope_order_invariant_under_normalisation(theta, d, e, a, b):
    theta2 = tuple(a * x + b for x in theta)
    assert (slope(theta, d) < slope(theta, e)) == (slope(theta2, d) < slope(theta2, e))
    nt = normalize_theta(theta, d)
    assert theta_value(nt, d) == 0
    assert (slope(theta, e) < slope(theta, d)) == (slope(nt, e) < 0)


@given(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
       st.lists(st.integers(0, 3), min_size=2, max_size=2).filter(any),
       st.lists(st.integers(0, 3), min_size=2, max_size=2).filter(any))
def test_seesaw(theta, e, f):
    # 0 -> U -> X -> V -> 0 with dim U = e, dim V = f
    d = tuple(x + y for x, y in zip(e, f))
    mu_u, mu_x, mu_v = slope(theta, e), slope(theta, d), slope(theta, f)
    assert (mu_u < mu_x) == (mu_x < mu_v) == (mu_u < mu_v)
    assert (mu_u == mu_x) == (mu_x == mu_v)


def test_box():
    assert sorted(box((1, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]
