from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mixedcone.errors import PreconditionError, ZeroDirection
from mixedcone.exact import EpsScalar
from mixedcone.polyoid import GeneratingMeasure, supp_membership
from mixedcone.polytope import Polytope, PolytopeFamily
from mixedcone.pruning import (
    local_measure_equality_check,
    prune_star_witness,
    prune_step,
    sticky_check,
)

from conftest import seg

eps = EpsScalar.eps
E2 = (0, 1)
SIMPLE = PolytopeFamily([(0, 0), (0, 1), (1, 1 + eps(1))], 2)
PRUNE = PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(2))], 2)
DOUBLE = PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(1)), (-eps(2), -eps(3))], 2)
WITNESS = seg((0, 0), (-1, 0))


def test_prune_step_example():
    G, step = prune_step(PRUNE, E2)
    assert (step.I, step.i0, step.m, step.changed) == ((2, 3), 2, 1, True)
    assert G.trajectories == ((0, 0), (-1, -eps(1)))


def test_prune_step_constant_family():
    P = Polytope([(0, 0), (2, 1), (0, 1), (1, -1)])
    G, step = prune_step(PolytopeFamily(P.vertices, 2), E2)
    assert step.m == 0
    assert G.limit() == P.face(E2).translate((0, -1))


def test_double_pruning_steps():
    G, step = prune_step(DOUBLE, E2)
    assert (step.I, step.m) == ((2, 3, 4), 1)
    assert G.body() == Polytope([(0, 0), (-1, -1), (-eps(1), -eps(2))], 2)
    trace = prune_star_witness(DOUBLE, E2)
    assert trace.effective_prunes == 2
    assert trace.witness == WITNESS


def test_witness_examples():
    trace = prune_star_witness(PRUNE, E2)
    assert trace.effective_prunes == 1 and trace.witness == WITNESS
    P = Polytope([(0, 0), (0, 1), (1, 1)])
    trace = prune_star_witness(PolytopeFamily(P.vertices, 2), E2)
    assert trace.witness == seg((0, 0), (1, 0))
    assert trace.effective_prunes == 1


def test_witness_from_measure_requires_nontrivial_ts():
    cusped = GeneratingMeasure.of(Polytope([(0, 0), (1, -1), (-1, -1)]))
    with pytest.raises(PreconditionError):
        prune_star_witness(cusped, E2)
    with pytest.raises(ZeroDirection):
        prune_star_witness(PRUNE, (0, 0))


def test_sticky_examples():
    assert sticky_check(PRUNE, E2)
    assert sticky_check(SIMPLE, E2)
    tri = Polytope([(0, 0), (1, -1), (-1, -1)])
    assert not sticky_check(PolytopeFamily(tri.vertices, 2), E2)


def test_local_check_examples():
    rep = local_measure_equality_check(PRUNE, E2)
    assert rep["ok"] and rep["lambda_order"] == 1
    const = PolytopeFamily([(0, 0), (1, 0), (0, 1), (1, 1)], 2)
    rep = local_measure_equality_check(const, E2)
    assert rep["ok"] and rep["lambda_order"] == 0
    fam3 = PolytopeFamily([(0, 0, -1), (0, 0, 0), (-eps(1), 0, -eps(2))], 3)
    rep = local_measure_equality_check(fam3, (0, 0, 1), (seg((0, 0, 0), (0, 1, 0)),))
    assert rep["ok"] and rep["lambda_order"] == 1


def _same_up_to_scaling(A, B):
    va = [v for v in A.vertices if any(v)]
    vb = [v for v in B.vertices if any(v)]
    if len(va) != len(vb):
        return False
    if not va:
        return True
    i = next(k for k, x in enumerate(va[0]) if x)
    s = Fraction(vb[0][i]) / va[0][i]
    return s > 0 and B == A.scale(s)


@pytest.mark.parametrize("F", [PRUNE, DOUBLE, SIMPLE])
@pytest.mark.parametrize("q", [Fraction(1, 2), 1, 3])
def test_scaling_robustness(F, q):
    base = prune_star_witness(F, E2).witness
    scaled = prune_star_witness(F, E2, scale=q).witness
    assert _same_up_to_scaling(base, scaled)
    assert supp_membership([scaled], E2)["member"] == supp_membership([base], E2)["member"]


@pytest.mark.parametrize("F", [PRUNE, DOUBLE, SIMPLE])
def test_witness_transfer(F):
    W = prune_star_witness(F, E2).witness
    assert supp_membership([W], E2)["member"]
    assert supp_membership([GeneratingMeasure((), (F,))], E2)["member"]


coef = st.integers(-2, 2)
trajectory = st.tuples(st.lists(coef, min_size=1, max_size=3), st.lists(coef, min_size=1, max_size=3)).map(
    lambda t: tuple(EpsScalar(c) if len(c) > 1 else c[0] for c in t)
)


@given(st.lists(trajectory, min_size=1, max_size=5), st.sampled_from([(0, 1), (1, 0), (1, 1), (-1, 2)]))
def test_termination_and_witness_geometry(trajs, u):
    F = PolytopeFamily(trajs, 2)
    trace = prune_star_witness(F, u)
    assert trace.effective_prunes <= len(F)
    assert len(trace.steps) == trace.effective_prunes + 1
    W = trace.witness
    assert (0, 0) in W.vertices
    assert all(v[0] * u[0] + v[1] * u[1] == 0 for v in W.vertices)
