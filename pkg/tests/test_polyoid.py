from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mixedcone.errors import SizeError, TrivialSubspace, UnsupportedMeasureShape, ZeroDirection
from mixedcone.exact import EpsScalar, Subspace
from mixedcone.mixedvol import mixed_area_measure, mixed_volume
from mixedcone.polyoid import (
    FamilyAtom,
    GeneratingMeasure,
    Verdict,
    certify_extreme,
    extreme_rays,
    measure_projection,
    normal_cone_intersection_check,
    supp_membership,
    support_equal_on_ext,
    ts_nontrivial,
)
from mixedcone.polytope import Polytope, PolytopeFamily, project

from conftest import polytopes, seg, square

eps = EpsScalar.eps
E2 = (0, 1)
SIMPLE = PolytopeFamily([(0, 0), (0, 1), (1, 1 + eps(1))], 2)
PRUNE = PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(2))], 2)
CUSPED = Polytope([(0, 0), (1, -1), (-1, -1)])


def fam(F):
    return GeneratingMeasure((), (F,))


def test_projection_examples():
    mu = measure_projection(GeneratingMeasure.of(square()), Subspace([(1, 0)], 2))
    assert mu.atoms == ((1, seg((0, 0), (1, 0))),)
    pr = measure_projection(fam(PRUNE), Subspace([(0, 1)], 2))
    assert pr.families[0].family.trajectories == ((0, -1), (0, 0), (0, -eps(2)))
    two = GeneratingMeasure(((1, seg((0, 0), (1, 1))), (Fraction(1, 2), seg((0, 0), (1, 2)))))
    merged = measure_projection(two, Subspace([(1, 0)], 2))
    assert merged.atoms == ((Fraction(3, 2), seg((0, 0), (1, 0))),)
    with pytest.raises(TrivialSubspace):
        measure_projection(two, Subspace([], 2))


def test_ts_nontrivial_examples():
    assert ts_nontrivial(fam(SIMPLE), E2)
    assert ts_nontrivial(fam(PRUNE), E2)
    assert not ts_nontrivial(GeneratingMeasure.of(CUSPED), E2)
    with pytest.raises(ZeroDirection):
        ts_nontrivial(fam(PRUNE), (0, 0))


def test_certify_examples():
    assert certify_extreme([fam(PRUNE)], E2).verdict == Verdict.EXTREME
    assert certify_extreme([CUSPED], E2).verdict == Verdict.NOT_EXTREME
    A, B = seg((0, 0, 0), (1, 0, 0)), seg((0, 0, 0), (0, 1, 0))
    cert = certify_extreme([A, B], (0, 0, 1))
    assert cert.verdict == Verdict.EXTREME and all(s == "exact" for s, _ in cert.entries)
    with pytest.raises(SizeError):
        certify_extreme([A], (0, 0, 1))


def test_certify_unknown_is_reported():
    # two unknown entries in R^3 cannot be certified either way
    up = PolytopeFamily([(0, 0, 0), (-eps(1), 0, -eps(2))], 3)
    side = PolytopeFamily([(0, 0, 0), (0, -eps(1), -eps(2))], 3)
    cert = certify_extreme([fam(up), fam(side)], (0, 0, 1))
    assert cert.verdict == Verdict.UNKNOWN


def test_supp_examples():
    out = supp_membership([fam(SIMPLE)], E2)
    assert out["member"] and out["via"] == "exact atom"
    out = supp_membership([fam(PRUNE)], E2)
    assert out["member"] and out["via"] == "branch limit"
    out = supp_membership([square()], (1, 1))
    assert not out["member"]
    two = GeneratingMeasure((), (PRUNE, SIMPLE))
    with pytest.raises(UnsupportedMeasureShape):
        supp_membership([two], E2)


def test_support_equal_examples():
    K = seg((0, 0), (1, 0))
    assert support_equal_on_ext(K, K, (K,))
    L = K + seg((0, 0), (0, 1))
    assert sorted(extreme_rays((K,))) == [(0, -1), (0, 1)]
    assert not support_equal_on_ext(K, L, (K,))
    assert mixed_volume((K, K)) < mixed_volume((L, K))
    V = seg((0, 0), (0, 1))
    assert support_equal_on_ext(V, V + V, (V,))
    assert mixed_volume((V, V)) == mixed_volume((V + V, V)) == 0


def test_worked_examples_agree_at_e2():
    double = PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(1)), (-eps(2), -eps(3))], 2)
    for F in (SIMPLE, PRUNE, double):
        member = supp_membership([fam(F)], E2)["member"]
        assert member == (certify_extreme([fam(F)], E2).verdict == Verdict.EXTREME)


discrete2 = st.lists(
    st.tuples(st.integers(1, 3), polytopes(2, 4)), min_size=1, max_size=3
).map(lambda xs: GeneratingMeasure(tuple(xs)))


@given(discrete2)
def test_projection_of_support(mu):
    W = Subspace([(1, 2)], 2)
    img = measure_projection(mu, W)
    assert {P for _, P in img.atoms} == {project(P, W) for _, P in mu.atoms}


@given(discrete2, st.sampled_from([(0, 1), (1, 0), (1, 1), (-1, 2), (2, -1)]))
def test_normal_cone_intersection(mu, u):
    assert normal_cone_intersection_check(mu, u)["contained"]


def test_normal_cone_intersection_equality_case():
    mu = GeneratingMeasure(((1, square()), (2, seg((0, 0), (1, 0)))))
    rep = normal_cone_intersection_check(mu, (0, 1))
    assert rep["contained"] and rep["equal"]
