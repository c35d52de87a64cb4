import random

import pytest
from hypothesis import given, strategies as st

from quivermoduli.counting import Cycle
from quivermoduli.framed import SizeGuardError
from quivermoduli.oracle import (FqRep, census_csv, cycle_rep, hn_filtration, hn_types, hom_ext_dims,
                                 n_entries, point_counts, stability_status, subrep_dimvectors, verify)
from quivermoduli.quiver import Quiver, QuiverError, slope, standard_quiver

K1, K2 = standard_quiver("kronecker", 1), standard_quiver("kronecker", 2)
L1, L2 = standard_quiver("loop", 1), standard_quiver("loop", 2)


def k1(x, q=2):
    return FqRep(K1, q, (1, 1), (((x,),),))


def test_shapes_validated():
    with pytest.raises(QuiverError):
        FqRep(K1, 2, (1, 1), (((1, 0),),))
    with pytest.raises(ValueError):
        FqRep(K1, 4, (1, 1), (((1,),),))


def test_subrep_dimvectors():
    assert set(subrep_dimvectors(k1(0))) == {(0, 0), (1, 0), (0, 1), (1, 1)}
    assert set(subrep_dimvectors(k1(1))) == {(0, 0), (0, 1), (1, 1)}
    J2 = FqRep(L1, 3, (2,), (((1, 1), (0, 1)),))
    subs = subrep_dimvectors(J2)
    assert set(subs) == {(0,), (1,), (2,)} and len(subs[(1,)]) == 1


def test_stability_status():
    assert stability_status(k1(1), (1, 0)) == "stable"
    assert stability_status(k1(0), (1, 0)) == "unstable"
    assert stability_status(k1(0), (0, 0)) == "strictly semistable"
    assert stability_status(FqRep(L1, 2, (1,), (((0,),),)), (0,)) == "stable"


def test_hn_filtration():
    assert hn_filtration(k1(1), (1, 0)).chain == ((0, 0), (1, 1))
    assert hn_filtration(k1(0), (1, 0)).chain == ((0, 0), (1, 0), (1, 1))
    # stable of slope 1 (vertex i) plus stable of slope 1/2 (K_1 with nonzero map), Theta=(1,0)
    Si = FqRep(K1, 2, (1, 0), ((),))
    M = Si.direct_sum(k1(1))
    f = hn_filtration(M, (1, 0))
    assert f.hn_type == ((1, 0), (1, 1))


def test_hom_ext():
    Si, Sj = FqRep.zero(K1, 2, (1, 0)), FqRep.zero(K1, 2, (0, 1))
    assert hom_ext_dims(Sj, Si) == (0, 0)
    assert hom_ext_dims(Si, Sj)[1] == 1
    rng = random.Random(5)
    for _ in range(50):
        Q = rng.choice([K1, K2, L1, L2])
        reps = []
        for _ in range(2):
            d = tuple(rng.randint(0, 2) for _ in range(Q.n))
            reps.append(FqRep.from_point(Q, 3, d, rng.randrange(3 ** n_entries(Q, d))))
        M, N = reps
        hom, ext = hom_ext_dims(M, N)
        assert hom - ext == Q.euler_form(M.d, N.d)
        if any(M.d):
            assert hom_ext_dims(M, M)[0] >= 1


def test_cycle_reps():
    assert cycle_rep(L1, Cycle((0,)), 2).matrices == (((1,),),)
    prim = cycle_rep(L2, Cycle((0, 1)), 3)
    assert set(subrep_dimvectors(prim)) == {(0,), (2,)}
    square = cycle_rep(L1, Cycle((0, 0)), 3)
    assert (1,) in subrep_dimvectors(square)
    with pytest.raises(QuiverError):
        cycle_rep(K2, Cycle((0, 1)), 2)


def test_point_counts_examples():
    pc = point_counts(K1, (1, 0), (1, 1), 2)
    assert (pc.total, pc.sst, pc.st, pc.group) == (2, 1, 1, 1)
    assert pc.census == {((1, 0), (0, 1)): 1, ((1, 1),): 1}
    pc = point_counts(Quiver(("i",), ()), (0,), (1,), 3)
    assert (pc.total, pc.group) == (1, 2)
    pc = point_counts(L1, (0,), (2,), 2)
    assert (pc.total, pc.sst, pc.group) == (16, 16, 6)
    assert census_csv(pc) == "hn_type,count\n(2),16\n"


def test_budget_guard():
    with pytest.raises(SizeGuardError):
        point_counts(L2, (0,), (4,), 2)


def test_parallel_ranges_deterministic():
    a = point_counts(K2, (1, 0), (2, 2), 2, chunks=7)
    b = point_counts(K2, (1, 0), (2, 2), 2, workers=2, chunks=5)
    c = point_counts(K2, (1, 0), (2, 2), 2)
    assert a == b == c


def test_verify_reports():
    r = verify(K1, (1, 0), (1, 1), 2)
    assert r["pass"] and {c["name"] for c in r["checks"]} >= {"P_d(q) * |G| = |R^sst|"}
    r = verify(K2, (1, 0), (2, 1), 3)
    assert r["pass"]


def test_hn_types():
    assert hn_types((1, 0), (1, 1)) == [((1, 0), (0, 1)), ((1, 1),)]


def test_hom_vanishing_between_slopes():
    theta = (1, 0)
    rng = random.Random(11)
    sst = []
    for d in [(1, 0), (0, 1), (1, 1), (1, 2), (2, 1)]:
        for _ in range(6):
            M = FqRep.from_point(K2, 2, d, rng.randrange(2 ** n_entries(K2, d)))
            if stability_status(M, theta) != "unstable":
                sst.append(M)
    pairs = 0
    for M in sst:
        for N in sst:
            if slope(theta, M.d) > slope(theta, N.d):
                assert hom_ext_dims(M, N)[0] == 0
                pairs += 1
    assert pairs > 10


@st.composite
def reps(draw):
    Q = draw(st.sampled_from([K1, K2, L1, L2]))
    d = tuple(draw(st.integers(0, 2)) for _ in range(Q.n))
    if not any(d):
        d = (1,) * Q.n
    q = draw(st.sampled_from([2, 3]))
    p = draw(st.integers(0, q ** n_entries(Q, d) - 1))
    theta = tuple(draw(st.integers(-2, 2)) for _ in range(Q.n))
    return FqRep.from_point(Q, q, d, p), theta, draw(st.integers(0, 10 ** 6))


@given(reps())
def test_hn_unique_under_reenumeration(data):
    M, theta, seed = data
    base = hn_filtration(M, theta)
    again = hn_filtration(M, theta, order=random.Random(seed))
    assert again.chain == base.chain
    slopes = [slope(theta, p) for p in base.hn_type]
    assert all(a > b for a, b in zip(slopes, slopes[1:]))


@given(reps())
def test_scss_maximality(data):
    M, theta, _ = data
    f = hn_filtration(M, theta)
    first = f.chain[1]
    mu = slope(theta, first)
    for e in subrep_dimvectors(M):
        if any(e):
            assert slope(theta, e) < mu or (slope(theta, e) == mu and sum(e) <= sum(first))
