from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mixedcone.errors import DimensionMismatch, TrivialSubspace, ZeroDirection
from mixedcone.exact import EpsScalar, Subspace, rank
from mixedcone.polytope import (
    Polytope,
    PolytopeFamily,
    facet_atoms,
    fan_cells,
    limit_at_zero,
    minkowski_sum,
    project,
    support_eval,
)

from conftest import directions, e, polytopes, seg, square

eps = EpsScalar.eps


def test_support_examples():
    h, face = support_eval(square(), (1, 1))
    assert h == 2 and [square().vertices[i] for i in face] == [(1, 1)]
    K = Polytope([(0, 0), (0, 1), (1, 1)])
    h, face = support_eval(K, (0, 1))
    assert h == 1 and {K.vertices[i] for i in face} == {(0, 1), (1, 1)}
    C = Polytope([(0, -1), (0, 0), (-eps(1), -eps(2))], 2)
    h, face = support_eval(C, (0, 1))
    assert h == 0 and [C.vertices[i] for i in face] == [(0, 0)]
    with pytest.raises(ZeroDirection):
        support_eval(square(), (0, 0))


def test_canonical_form():
    P = Polytope([(1, 1), (0, 0), (1, 0), (0, 1), (Fraction(1, 2), Fraction(1, 2))])
    assert P.vertices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert P == square()


def test_minkowski_examples():
    S = minkowski_sum(seg((0, 0), (1, 0)), seg((0, 0), (0, 1)))
    assert S == square()
    T = minkowski_sum(square(), Polytope([(3, -1)]))
    assert T == square().translate((3, -1))
    D = minkowski_sum(seg((0, 0), (1, 0)), seg((0, 0), (1, 0)))
    assert D.vertices == ((0, 0), (2, 0))
    with pytest.raises(DimensionMismatch):
        minkowski_sum(square(), Polytope([(0, 0, 0)]))


def test_facet_atom_examples():
    atoms = facet_atoms(square())
    assert sorted(w for w, _ in atoms) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    atoms = facet_atoms(seg((0, 0), (1, 0)))
    assert sorted(w for w, _ in atoms) == [(0, -1), (0, 1)]
    assert all(f == frozenset({0, 1}) for _, f in atoms)
    assert facet_atoms(Polytope([(1, 1)])) == []


def test_fan_cell_examples():
    cells = fan_cells((square(),))
    assert len(cells) == 8
    reps = {c.representative: c for c in cells}
    assert (1, 1) in reps and reps[(1, 1)].face_dim == 0
    cells = fan_cells((seg((0, 0), (1, 0)), seg((0, 0), (0, 1))))
    assert len(cells) == 8
    for c in cells:
        A, B = c.per_body_faces
        assert len(A) + len(B) == 2 + c.face_dim
    assert fan_cells((Polytope([(0, 0)]),)) == []


def test_project_examples():
    W1 = Subspace([(1, 0)], 2)
    assert project(square(), W1) == seg((0, 0), (1, 0))
    assert project(Polytope([(0, 0), (0, 1), (1, 1)]), W1) == seg((0, 0), (1, 0))
    tri = Polytope([(0, 0, 0), (1, 0, 0), (0, 2, 0)])
    assert project(tri, Subspace([(1, 0, 0), (0, 1, 0)], 3)) == tri
    with pytest.raises(TrivialSubspace):
        project(square(), Subspace([], 2))


def test_limit_examples():
    C = Polytope([(0, -1), (0, 0), (-eps(1), -eps(2))], 2)
    assert limit_at_zero(C) == seg((0, -1), (0, 0))
    T = Polytope([(0, 0), (0, 1), (1, 1 + eps(1))], 2)
    assert limit_at_zero(T) == Polytope([(0, 0), (0, 1), (1, 1)])
    assert limit_at_zero(square()) == square()


@given(polytopes(2), polytopes(2), st.lists(directions(2), min_size=1, max_size=20))
def test_support_additive_2d(P, Q, us):
    S = P + Q
    for u in us:
        assert S.h(u) == P.h(u) + Q.h(u)
        assert S.face(u) == P.face(u) + Q.face(u)


@given(polytopes(3, 4), polytopes(3, 4), directions(3))
def test_support_additive_3d(P, Q, u):
    S = P + Q
    assert S.h(u) == P.h(u) + Q.h(u)
    assert S.face(u) == P.face(u) + Q.face(u)


def _face_dim(P, idx):
    V = [P.vertices[i] for i in sorted(idx)]
    return rank([tuple(a - b for a, b in zip(v, V[0])) for v in V[1:]], P.n) if len(V) > 1 else 0


@given(st.sampled_from([2, 3]).flatmap(lambda n: polytopes(n)))
def test_facet_atoms_have_codim_one_faces(P):
    n = P.n
    atom_dirs = set()
    for w, face in facet_atoms(P):
        assert _face_dim(P, face) == n - 1
        assert P.face_indices(w) == face
        atom_dirs.add(w)
    if P.dim >= 1:
        for c in fan_cells((P,)):
            if c.representative not in atom_dirs:
                assert _face_dim(P, P.face_indices(c.representative)) != n - 1


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.lists(polytopes(n, 4), min_size=1, max_size=2)))
def test_fan_cells_are_faces_of_the_sum(bodies):
    S = minkowski_sum(bodies)
    for c in fan_cells(bodies):
        faces = [B.face(c.representative) for B in bodies]
        assert [B.face_indices(c.representative) for B in bodies] == list(c.per_body_faces)
        assert minkowski_sum(faces) == S.face(c.representative)


def test_facial_stability_on_examples():
    fams = [
        PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(2))], 2),
        PolytopeFamily([(0, 0), (0, 1), (1, 1 + eps(1))], 2),
        PolytopeFamily([(0, -1), (0, 0), (-eps(1), -eps(1)), (-eps(2), -eps(3))], 2),
    ]
    for F in fams:
        P = F.body()
        for u in [(0, 1), (1, 0), (-1, 0), (1, 1), (0, -1), (-1, 2)]:
            predicted = P.face(u)
            for x in (Fraction(1, 100), Fraction(1, 1000)):
                assert predicted.evaluate(x) == F.at(x).face(u)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4))
def test_limit_commutes_with_sum_and_projection(coeffs):
    pts = [(a + b * eps(1), c + d * eps(2)) for a, b, c, d in coeffs]
    F = PolytopeFamily(pts, 2)
    G = PolytopeFamily([(1, eps(1)), (-1, 0)], 2)
    assert limit_at_zero(F.body() + G.body()) == F.limit() + G.limit()
    W = Subspace([(1, 1)], 2)
    assert limit_at_zero(project(F.body(), W)) == project(F.limit(), W)
