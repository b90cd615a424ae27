"""Polytopes in V-representation over Q or Q[eps].

Faces of a Minkowski sum are handled as tuples of per-summand vertex index
sets: ``F(C_1 + ... + C_m, w) = F(C_1, w) + ... + F(C_m, w)`` and this
decomposition is unique, so the combinatorics of the sum never needs the
(large) explicit vertex list of the sum.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, DivergentFamily, TrivialSubspace, ZeroDirection
from .exact import (
    EpsScalar,
    Subspace,
    cross,
    dot,
    independent_subset,
    normalize_eps_vector,
    primitive,
    qnorm,
    rank,
    rank_and_kernel,
    vadd,
    vsub,
)

__all__ = [
    "Polytope",
    "SumFan",
    "FanCell",
    "PolytopeFamily",
    "tuple_atoms",
    "coordinates_in",
    "support_eval",
    "minkowski_sum",
    "facet_atoms",
    "fan_cells",
    "project",
    "limit_at_zero",
    "direction_key",
    "normalize_direction",
]


def _is_zero(v):
    return all(x == 0 for x in v)


def _vec_has_eps(v):
    return any(isinstance(x, EpsScalar) for x in v)


def _clean(x):
    if isinstance(x, EpsScalar):
        return x.constant() if x.is_constant() else x
    return qnorm(x)


def normalize_direction(v):
    """Canonical positive multiple of a nonzero direction."""
    if _is_zero(v):
        raise ZeroDirection("zero direction")
    if _vec_has_eps(v):
        return normalize_eps_vector(v)
    return primitive(v)


def direction_key(v):
    """Key identifying the line spanned by ``v`` (sign ignored)."""
    w = normalize_direction(v)
    for x in w:
        if x != 0:
            if x < 0:
                w = normalize_direction(tuple(-y for y in w))
            break
    return w


def _affine(points, n):
    p0 = points[0]
    diffs = [vsub(p, p0) for p in points[1:]]
    D = [diffs[i] for i in independent_subset(diffs)]
    d = len(D)
    if d == 0:
        lperp = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
    elif d == n:
        lperp = []
    else:
        lperp = list(rank_and_kernel(D, n)[1].basis)
    return d, D, lperp


def _point_facets(points, n, d, lperp):
    """Relative facets of ``conv(points)`` as ``(normal, index set)`` pairs."""
    if d == 0:
        return []
    found = {}
    for S in combinations(range(len(points)), d):
        base = points[S[0]]
        w = cross([vsub(points[j], base) for j in S[1:]] + lperp, n)
        if _is_zero(w):
            continue
        vals = [dot(p, w) for p in points]
        h = vals[S[0]]
        above = below = False
        for v in vals:
            if v > h:
                above = True
            elif v < h:
                below = True
        if above and below:
            continue
        face = frozenset(i for i, v in enumerate(vals) if v == h)
        if face in found:
            continue
        if above:
            w = tuple(-x for x in w)
        found[face] = normalize_direction(w)
    return [(w, face) for face, w in found.items()]


class Polytope:
    """Convex hull of finitely many points, stored by its sorted vertex list."""

    __slots__ = ("vertices", "n", "_d", "_lperp", "_facets", "_edge_dirs", "_hash")

    def __init__(self, points, n=None):
        pts = []
        seen = set()
        for p in points:
            p = tuple(_clean(x) for x in p)
            if p not in seen:
                seen.add(p)
                pts.append(p)
        if not pts:
            raise ValueError("a polytope needs at least one point")
        if n is None:
            n = len(pts[0])
        if any(len(p) != n for p in pts):
            raise DimensionMismatch("points of differing dimension")
        self.n = n
        self._hash = None
        self._edge_dirs = None
        if len(pts) == 1:
            self.vertices = (pts[0],)
            self._d, self._lperp, self._facets = None, None, None
            return
        d, _, lperp = _affine(pts, n)
        facets = _point_facets(pts, n, d, lperp)
        if d == 1:
            keep = sorted(i for _, f in facets for i in f)
        else:
            keep = [
                i
                for i in range(len(pts))
                if rank([w for w, f in facets if i in f], n) == d
            ]
        order = sorted(keep, key=lambda i: pts[i])
        remap = {old: new for new, old in enumerate(order)}
        self.vertices = tuple(pts[i] for i in order)
        self._d = d
        self._lperp = lperp
        self._facets = [
            (w, frozenset(remap[i] for i in f if i in remap)) for w, f in facets
        ]

    @classmethod
    def _trusted(cls, vertices, n, d=None, lperp=None, facets=None, edge_dirs=None):
        """Build from points known to be exactly the vertex set."""
        obj = object.__new__(cls)
        obj.vertices = tuple(sorted(vertices))
        obj.n = n
        obj._d, obj._lperp, obj._facets = d, lperp, facets
        obj._edge_dirs = edge_dirs
        obj._hash = None
        if facets is not None and list(obj.vertices) != list(vertices):
            raise ValueError("facet data must accompany sorted vertices")
        return obj

    @classmethod
    def point(cls, p):
        return cls._trusted([tuple(p)], len(p))

    # -- structure ---------------------------------------------------------
    def _ensure(self):
        if self._facets is not None:
            return
        pts = list(self.vertices)
        d, _, lperp = _affine(pts, self.n)
        self._d, self._lperp = d, lperp
        self._facets = _point_facets(pts, self.n, d, lperp)

    @property
    def dim(self):
        self._ensure()
        return self._d

    @property
    def lperp(self):
        """Basis of the orthogonal complement of the affine hull's direction."""
        self._ensure()
        return self._lperp

    @property
    def facets(self):
        """Relative facets as ``(primitive outer normal, vertex index set)``."""
        self._ensure()
        return self._facets

    @property
    def edge_dirs(self):
        """Directions (up to sign) of all edges of the polytope."""
        if self._edge_dirs is None:
            d = self.dim
            out = {}
            if d >= 1:
                V = self.vertices
                facets = self.facets
                for a, b in combinations(range(len(V)), 2):
                    if d > 1:
                        common = [w for w, f in facets if a in f and b in f]
                        if rank(common, self.n) != d - 1:
                            continue
                    key = direction_key(vsub(V[b], V[a]))
                    out.setdefault(key, None)
            self._edge_dirs = list(out)
        return self._edge_dirs

    def is_rational(self):
        return not any(_vec_has_eps(v) for v in self.vertices)

    def pspan(self):
        V = self.vertices
        return Subspace([vsub(v, V[0]) for v in V[1:]], self.n)

    # -- evaluation --------------------------------------------------------
    def h(self, u):
        return max(dot(v, u) for v in self.vertices)

    def face_indices(self, u):
        vals = [dot(v, u) for v in self.vertices]
        h = max(vals)
        return frozenset(i for i, x in enumerate(vals) if x == h)

    def subpolytope(self, indices):
        return Polytope._trusted([self.vertices[i] for i in sorted(indices)], self.n)

    def face(self, u):
        return self.subpolytope(self.face_indices(u))

    def translate(self, t):
        return Polytope._trusted(
            [tuple(_clean(a + b) for a, b in zip(v, t)) for v in self.vertices],
            self.n,
            edge_dirs=self._edge_dirs,
        )

    def scale(self, c):
        if c == 0:
            return Polytope.point((0,) * self.n)
        pts = [tuple(_clean(c * x) for x in v) for v in self.vertices]
        if c > 0:
            if self._facets is not None:
                return Polytope._trusted(pts, self.n, self._d, self._lperp, self._facets, self._edge_dirs)
            return Polytope._trusted(pts, self.n, edge_dirs=self._edge_dirs)
        return Polytope._trusted(pts, self.n)

    def __neg__(self):
        return self.scale(-1)

    def drop_coordinate(self, k):
        """Image under deletion of coordinate ``k`` (re-canonicalized)."""
        return Polytope([v[:k] + v[k + 1:] for v in self.vertices], self.n - 1)

    def evaluate(self, x):
        """Substitute a rational value for eps."""
        return Polytope(
            [tuple(c.evaluate(x) if isinstance(c, EpsScalar) else c for c in v) for v in self.vertices],
            self.n,
        )

    # -- identity ----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.n == other.n and self.vertices == other.vertices

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.vertices))
        return self._hash

    def __lt__(self, other):
        return (self.n, self.vertices) < (other.n, other.vertices)

    def __repr__(self):
        return f"Polytope({[list(v) for v in self.vertices]})"

    def __add__(self, other):
        return minkowski_sum(self, other)


# ---------------------------------------------------------------------------
# sums and fans


def _face_dim(bodies, face):
    vecs = []
    for B, F in zip(bodies, face):
        idx = sorted(F)
        base = B.vertices[idx[0]]
        vecs.extend(vsub(B.vertices[i], base) for i in idx[1:])
    return rank(vecs, bodies[0].n) if vecs else 0


class SumFan:
    """Face structure of ``C_1 + ... + C_m`` with faces as index-set tuples.

    Facets are relative to the affine hull of the sum.
    """

    def __init__(self, bodies, n=None):
        bodies = tuple(bodies)
        if n is None:
            if not bodies:
                raise ValueError("ambient dimension required for the empty sum")
            n = bodies[0].n
        if any(B.n != n for B in bodies):
            raise DimensionMismatch("bodies of differing ambient dimension")
        self.bodies = bodies
        self.n = n
        dirs = []
        for B in bodies:
            V = B.vertices
            dirs.extend(vsub(v, V[0]) for v in V[1:])
        D = [dirs[i] for i in independent_subset(dirs)]
        self.dim = d = len(D)
        if d == 0:
            self.lperp = [tuple(1 if i == j else 0 for i in range(n)) for j in range(n)]
        elif d == n:
            self.lperp = []
        else:
            self.lperp = list(rank_and_kernel(D, n)[1].basis)
        self.direction_basis = D
        self.facets = self._find_facets()
        self._faces = None

    def _find_facets(self):
        d, n = self.dim, self.n
        if d == 0:
            return []
        edges = {}
        for B in self.bodies:
            for e in B.edge_dirs:
                edges.setdefault(e, None)
        edges = list(edges)
        seen = set()
        out = []
        for combo in combinations(edges, d - 1):
            w = cross(list(combo) + self.lperp, n)
            if _is_zero(w):
                continue
            w = normalize_direction(w)
            for s in (w, tuple(-x for x in w)):
                if d > 1:
                    s = normalize_direction(s)
                if s in seen:
                    continue
                seen.add(s)
                face = tuple(B.face_indices(s) for B in self.bodies)
                if d == 1 or _face_dim(self.bodies, face) == d - 1:
                    out.append((s, face))
        out.sort(key=lambda t: t[0])
        return out

    def face_at(self, u):
        return tuple(B.face_indices(u) for B in self.bodies)

    def faces(self):
        """Nonempty proper faces as ``(face tuple, containing facet indices)``."""
        if self._faces is None:
            facet_faces = [f for _, f in self.facets]
            found = set(facet_faces)
            frontier = list(found)
            while frontier:
                nxt = []
                for g in frontier:
                    for f in facet_faces:
                        h = tuple(a & b for a, b in zip(g, f))
                        if all(h) and h not in found:
                            found.add(h)
                            nxt.append(h)
                frontier = nxt
            out = []
            for g in found:
                cont = tuple(
                    j for j, f in enumerate(facet_faces) if all(a <= b for a, b in zip(g, f))
                )
                out.append((g, cont))
            out.sort(key=lambda t: (-sum(len(a) for a in t[0]), [sorted(a) for a in t[0]]))
            self._faces = out
        return self._faces

    def face_points(self, face):
        """Vertices of the sum face (all per-body faces are then singletons)."""
        pt = (0,) * self.n
        for B, F in zip(self.bodies, face):
            (i,) = tuple(F)
            pt = vadd(pt, B.vertices[i])
        return tuple(_clean(x) for x in pt)

    def sum_polytope(self):
        n = self.n
        if self.dim == 0:
            pt = (0,) * n
            for B in self.bodies:
                pt = vadd(pt, B.vertices[0])
            return Polytope._trusted([tuple(_clean(x) for x in pt)], n)
        vfaces = [g for g, _ in self.faces() if all(len(a) == 1 for a in g)]
        pts = {self.face_points(g): g for g in vfaces}
        order = sorted(pts)
        index = {pts[p]: i for i, p in enumerate(order)}
        facets = []
        for w, f in self.facets:
            members = frozenset(
                index[g] for g in vfaces if all(a <= b for a, b in zip(g, f))
            )
            facets.append((w, members))
        edge_dirs = {}
        for B in self.bodies:
            for e in B.edge_dirs:
                edge_dirs.setdefault(e, None)
        return Polytope._trusted(order, n, self.dim, list(self.lperp), facets, list(edge_dirs))


def minkowski_sum(*bodies):
    if len(bodies) == 1 and isinstance(bodies[0], (list, tuple)):
        bodies = tuple(bodies[0])
    if not bodies:
        raise ValueError("empty Minkowski sum needs an ambient dimension")
    if len(bodies) == 1:
        return bodies[0]
    return SumFan(bodies).sum_polytope()


def support_eval(P, u):
    """Support value and support set (vertex indices) of ``P`` at ``u``."""
    if _is_zero(u):
        raise ZeroDirection("support of the zero direction")
    if len(u) != P.n:
        raise DimensionMismatch("direction and polytope dimensions differ")
    return P.h(u), P.face_indices(u)


def tuple_atoms(bodies, n):
    """Directions ``w`` with ``dim F(sum, w) = n-1`` and the per-body faces there."""
    fan = SumFan(bodies, n)
    if fan.dim == n:
        return list(fan.facets)
    if fan.dim == n - 1:
        w = normalize_direction(fan.lperp[0])
        whole = tuple(frozenset(range(len(B.vertices))) for B in fan.bodies)
        neg = normalize_direction(tuple(-x for x in w))
        return sorted([(w, whole), (neg, whole)], key=lambda t: t[0])
    return []


def facet_atoms(P):
    return [(w, face) for w, (face,) in tuple_atoms((P,), P.n)]


@dataclass(frozen=True)
class FanCell:
    """A face of the sum with its per-body faces and an interior normal."""

    per_body_faces: tuple
    representative: tuple
    face_dim: int
    cone_dim: int

    def faces(self, bodies):
        return tuple(B.subpolytope(F) for B, F in zip(bodies, self.per_body_faces))


def fan_cells(bodies):
    bodies = tuple(bodies)
    if not bodies:
        raise ValueError("fan of an empty tuple")
    fan = SumFan(bodies)
    n, d = fan.n, fan.dim
    if d == 0:
        return []
    cells = []
    for g, cont in fan.faces():
        rep = (0,) * n
        for j in cont:
            rep = vadd(rep, fan.facets[j][0])
        rep = normalize_direction(rep)
        cone_dim = rank([fan.facets[j][0] for j in cont], n) + (n - d)
        cells.append(FanCell(g, rep, _face_dim(bodies, g), cone_dim))
    if d < n:
        whole = tuple(frozenset(range(len(B.vertices))) for B in bodies)
        cells.append(FanCell(whole, normalize_direction(fan.lperp[0]), d, n - d))
    return cells


def project(P, W):
    """Orthogonal projection onto ``W``, or coordinate deletion for an int ``W``."""
    if isinstance(W, int):
        return P.drop_coordinate(W)
    if W.dim == 0:
        raise TrivialSubspace("projection onto the zero subspace")
    M = W.projection_matrix()
    pts = [tuple(sum(M[i][j] * v[j] for j in range(P.n)) for i in range(P.n)) for v in P.vertices]
    return Polytope(pts, P.n)


def coordinates_in(P, W):
    """Image of ``P`` (lying in ``W``) in the coordinates of ``W``'s basis."""
    return Polytope([W.coordinates(v) for v in P.vertices], W.dim)


def limit_at_zero(P):
    """Limit of an eps-polytope as eps -> 0+."""
    pts = []
    for v in P.vertices:
        row = []
        for x in v:
            if isinstance(x, EpsScalar):
                if x.order < 0:
                    raise DivergentFamily("coordinate diverges")
                row.append(x.limit())
            else:
                row.append(x)
        pts.append(tuple(row))
    return Polytope(pts, P.n)


class PolytopeFamily:
    """Polytopes ``conv{v_1(eps), ..., v_k(eps)}`` with polynomial trajectories.

    Trajectories are kept in the given order and are never merged, so vertex
    identities persist across eps.
    """

    __slots__ = ("trajectories", "n")

    def __init__(self, trajectories, n=None):
        traj = [tuple(_clean(EpsScalar.lift(x)) for x in v) for v in trajectories]
        if not traj:
            raise ValueError("a family needs at least one trajectory")
        self.n = n if n is not None else len(traj[0])
        if any(len(v) != self.n for v in traj):
            raise DimensionMismatch("trajectories of differing dimension")
        self.trajectories = tuple(traj)

    def __len__(self):
        return len(self.trajectories)

    def __eq__(self, other):
        return isinstance(other, PolytopeFamily) and self.trajectories == other.trajectories

    def __hash__(self):
        return hash(self.trajectories)

    def __repr__(self):
        return f"PolytopeFamily({[list(v) for v in self.trajectories]})"

    def body(self):
        """The eventual polytope over ``Q[eps]``."""
        return Polytope(self.trajectories, self.n)

    def limit_points(self):
        out = []
        for v in self.trajectories:
            row = []
            for x in v:
                if isinstance(x, EpsScalar):
                    if x.order < 0:
                        raise DivergentFamily("trajectory diverges")
                    row.append(x.limit())
                else:
                    row.append(x)
            out.append(tuple(row))
        return out

    def limit(self):
        return Polytope(self.limit_points(), self.n)

    def at(self, x):
        """Concrete polytope for the rational parameter value ``eps = x``."""
        pts = [tuple(c.evaluate(x) if isinstance(c, EpsScalar) else c for c in v) for v in self.trajectories]
        return Polytope(pts, self.n)

    def is_constant(self):
        return all(not isinstance(x, EpsScalar) for v in self.trajectories for x in v)

    def map(self, M):
        """Image under the linear map with matrix ``M`` (rows give new coordinates)."""
        return PolytopeFamily(
            [tuple(sum((M[i][j] * v[j] for j in range(self.n)), 0) for i in range(len(M))) for v in self.trajectories],
            len(M),
        )
