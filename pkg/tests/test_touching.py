from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from mixedcone.errors import CuspRangeError, DirectionNotInSubspace, ZeroDirection
from mixedcone.exact import EpsScalar, Subspace
from mixedcone.polytope import Polytope, minkowski_sum
from mixedcone.touching import cusp, cusp_family, projection_ts_check, touching_space_polytope

from conftest import directions, polytopes, seg, square

eps = EpsScalar.eps
TRI = Polytope([(0, 0), (0, 1), (1, 1)])


def test_touching_examples():
    _, _, TS = touching_space_polytope(TRI, (0, 1))
    assert TS == Subspace([(1, 0)], 2)
    N, T, TS = touching_space_polytope(square(), (1, 1))
    assert TS.dim == 0 and N is T
    assert sorted(N.generators) == [(0, 1), (1, 0)]


def test_touching_segment():
    # all v with F(P, v) = P are multiples of e2 with either sign: the normal
    # cone is the line span{e2} (lineality of a segment in the plane)
    N, _, TS = touching_space_polytope(seg((0, 0), (1, 0)), (0, 1))
    assert TS == Subspace([(1, 0)], 2)
    assert N.lineality == Subspace([(0, 1)], 2)
    assert N.relint_contains((0, 1)) and N.relint_contains((0, -1))
    assert not N.contains((1, 1))


def test_cusp_examples():
    P = Polytope([(0, 0), (1, -1), (-1, -1)])
    r = cusp(P, (0, 1))
    assert r.max_cusp_sq == Fraction(1, 2) and r.apex == (0, 0)
    assert r.has_cusp(Fraction(1, 2)) and not r.has_cusp(Fraction(3, 5))
    assert cusp(seg((0, 0), (1, 0)), (0, 1)).max_cusp_sq == 0
    assert cusp(Polytope([(2, 2)]), (0, 1)).max_cusp_sq == 1
    C = Polytope([(0, -1), (0, 0), (-eps(1), -eps(2))], 2)
    assert cusp_family(C, (0, 1)) == (True, 0)
    with pytest.raises(CuspRangeError):
        r.has_cusp(0)
    with pytest.raises(CuspRangeError):
        cusp(P, (0, 1), Fraction(3, 2))
    with pytest.raises(ZeroDirection):
        cusp(P, (0, 0))


def test_projection_examples():
    K = Polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    rep = projection_ts_check(K, Subspace([(1, 0, 0), (0, 0, 1)], 3), (1, 0, 0))
    assert rep["holds"] and rep["ts_lhs"].dim == 0
    rep = projection_ts_check(TRI, Subspace([(1, 0), (0, 1)], 2), (0, 1))
    assert rep["holds"] and rep["ts_lhs"] == Subspace([(1, 0)], 2)
    rep = projection_ts_check(TRI, Subspace([(0, 1)], 2), (0, 1))
    assert rep["holds"] and rep["ts_lhs"].dim == 0
    with pytest.raises(DirectionNotInSubspace):
        projection_ts_check(TRI, Subspace([(0, 1)], 2), (1, 0))


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(polytopes(n), directions(n))))
def test_tc4(data):
    P, u = data
    N, T, TS = touching_space_polytope(P, u)
    assert N.relint_contains(u)
    assert (TS.dim == 0) == (cusp(P, u).max_cusp_sq > 0)


@given(polytopes(2), directions(2), st.fractions(Fraction(1, 50), 1))
def test_cusp_monotone(P, u, c):
    r = cusp(P, u)
    if r.has_cusp(c):
        for smaller in (c / 2, c / 3, c * Fraction(9, 10)):
            assert r.has_cusp(smaller)


@given(st.lists(polytopes(2, 4), min_size=2, max_size=3), directions(2))
def test_tc5_sum(parts, u):
    S = minkowski_sum(parts)
    assert cusp(S, u).max_cusp_sq == min(cusp(P, u).max_cusp_sq for P in parts)


@given(polytopes(3), st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)))
def test_tc3_random(P, c):
    W = Subspace([(1, 1, 0), (0, 0, 1)], 3)
    u = (c[0], c[0], c[1])
    assume(any(u))
    assert projection_ts_check(P, W, u)["holds"]
