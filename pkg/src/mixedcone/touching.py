"""Normal cones, touching spaces and cusps of polytopes."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import CuspRangeError, DirectionNotInSubspace, InternalError, ZeroDirection
from .exact import (
    EpsScalar,
    Subspace,
    dot,
    fm_feasible,
    qnorm,
    rank_and_kernel,
    to_rational,
    vsub,
)
from .polytope import Polytope, project

__all__ = [
    "PolyhedralCone",
    "HCone",
    "CuspReport",
    "normal_cone",
    "touching_space_polytope",
    "cusp",
    "cusp_family",
    "projection_ts_check",
]


def _check_u(u, n=None):
    if all(x == 0 for x in u):
        raise ZeroDirection("zero direction")
    if n is not None and len(u) != n:
        from .errors import DimensionMismatch

        raise DimensionMismatch("direction has the wrong dimension")


def affine_solutions(columns, b, n):
    """Solutions of ``sum x_j columns[j] = b`` as ``(x0, kernel)`` or ``None``."""
    m = len(columns)
    rows = [[columns[j][i] for j in range(m)] + [-b[i]] for i in range(n)]
    _, K = rank_and_kernel(rows, m + 1)
    pick = next((v for v in K.basis if v[m] != 0), None)
    if pick is None:
        return None
    x0 = tuple(qnorm(Fraction(x) / pick[m]) for x in pick[:m])
    _, ker = rank_and_kernel([[columns[j][i] for j in range(m)] for i in range(n)], m)
    return x0, list(ker.basis)


@dataclass(frozen=True)
class PolyhedralCone:
    """``cone(generators) + lineality``."""

    generators: tuple
    lineality: Subspace

    @property
    def n(self):
        return self.lineality.n

    def _solve(self, v):
        cols = list(self.generators) + list(self.lineality.basis)
        if not cols:
            return None if any(x != 0 for x in v) else ((), [])
        return affine_solutions(cols, v, self.n)

    def _positivity(self, v, strict):
        sol = self._solve(v)
        if sol is None:
            return False
        x0, ker = sol
        r = len(self.generators)
        cons = []
        for i in range(r):
            cons.append(([k[i] for k in ker], x0[i], strict))
        return fm_feasible(cons, len(ker))

    def contains(self, v):
        return self._positivity(v, False)

    def relint_contains(self, v):
        """Membership in the relative interior: all generator weights positive."""
        return self._positivity(v, True)

    def span(self):
        return Subspace(list(self.generators) + list(self.lineality.basis), self.n)


@dataclass(frozen=True)
class HCone:
    """``{v in W : a.v <= 0 for a in rows}`` in coordinates ``v = B z`` of ``W``."""

    rows: tuple
    W: Subspace

    @classmethod
    def normal_cone(cls, P, face, W=None):
        """``N(P, F)`` for a face given by vertex indices, restricted to ``W``."""
        W = W if W is not None else Subspace.full(P.n)
        B = W.basis
        rows = set()
        V = P.vertices
        for f in face:
            for x in V:
                d = vsub(x, V[f])
                a = tuple(dot(d, b) for b in B)
                if any(c != 0 for c in a):
                    rows.add(a)
        return cls(tuple(sorted(rows)), W)

    def contains_cone(self, other):
        """Exact containment ``other <= self`` (same ``W``)."""
        k = self.W.dim
        base = [(tuple(-c for c in a), 0, False) for a in other.rows]
        for a in self.rows:
            if fm_feasible(base + [(a, 0, True)], k):
                return False
        return True

    def __eq__(self, other):
        return self.contains_cone(other) and other.contains_cone(self)

    __hash__ = None

    def span(self):
        """Linear span in ambient coordinates."""
        k = self.W.dim
        base = [(tuple(-c for c in a), 0, False) for a in self.rows]
        implicit = [a for a in self.rows if not fm_feasible(base + [(tuple(-c for c in a), 0, True)], k)]
        if implicit:
            _, Z = rank_and_kernel([list(a) for a in implicit], k)
            zs = Z.basis
        else:
            zs = [tuple(1 if i == j else 0 for i in range(k)) for j in range(k)]
        B = self.W.basis
        vecs = [tuple(sum(z[j] * B[j][i] for j in range(k)) for i in range(self.W.n)) for z in zs]
        return Subspace(vecs, self.W.n)


def normal_cone(P, face):
    """Normal cone of ``P`` at a face (vertex index set) in generator form."""
    gens = tuple(w for w, f in P.facets if face <= f)
    return PolyhedralCone(gens, Subspace(P.lperp, P.n, trusted=True))


def touching_space_polytope(P, u):
    """``(N, T, TS)`` at ``u``; for polytopes ``T = N(P, F(P, u))``."""
    _check_u(u, P.n)
    face = P.face_indices(u)
    N = normal_cone(P, face)
    if not N.relint_contains(u):
        raise InternalError("direction not in the relative interior of its normal cone")
    TS = P.subpolytope(face).pspan()
    return N, N, TS


@dataclass(frozen=True)
class CuspReport:
    max_cusp_sq: object
    apex: object

    def has_cusp(self, c_sq):
        c_sq = to_rational(c_sq)
        if not (0 < c_sq <= 1):
            raise CuspRangeError("c^2 must lie in (0, 1]")
        return c_sq <= self.max_cusp_sq

    def to_json(self):
        from .exact import format_rational

        return {
            "max_cusp_sq": format_rational(self.max_cusp_sq),
            "apex": None if self.apex is None else [format_rational(x) for x in self.apex],
        }


def cusp(P, u, c_sq=None):
    """Largest ``c^2`` such that ``P`` has a c-cusp in direction ``u``."""
    _check_u(u, P.n)
    if c_sq is not None:
        c = to_rational(c_sq)
        if not (0 < c <= 1):
            raise CuspRangeError("c^2 must lie in (0, 1]")
    face = P.face_indices(u)
    if len(face) > 1:
        return CuspReport(0, None)
    (i,) = face
    x = P.vertices[i]
    uu = dot(u, u)
    best = Fraction(1)
    for y in P.vertices:
        if y == x:
            continue
        d = vsub(y, x)
        ip = dot(d, u)
        if ip >= 0:
            raise InternalError("non-apex vertex on the supporting hyperplane")
        best = min(best, Fraction(ip * ip) / (dot(d, d) * uu))
    return CuspReport(qnorm(best), x)


def cusp_family(P, u):
    """Asymptotic cusp constant of an eps-polytope.

    Returns ``(tends_to_zero, limit)`` where ``limit`` is the limit of the
    maximal squared cusp constant as eps -> 0+.
    """
    _check_u(u, P.n)
    face = P.face_indices(u)
    if len(face) > 1:
        return True, 0
    (i,) = face
    x = P.vertices[i]
    uu = dot(u, u)
    limit = Fraction(1)
    zero = False
    for y in P.vertices:
        if y == x:
            continue
        d = vsub(y, x)
        ip = dot(d, u)
        num = EpsScalar.lift(ip * ip)
        den = EpsScalar.lift(dot(d, d) * uu)
        if num.order > den.order:
            zero = True
            limit = Fraction(0)
        elif num.order == den.order:
            limit = min(limit, Fraction(num.lowest()) / den.lowest())
    return zero, qnorm(limit)


def projection_ts_check(K, W, u):
    """Both sides of the projection identities for touching cones and spaces."""
    _check_u(u, K.n)
    if not W.contains(u):
        raise DirectionNotInSubspace("u is not in W")
    PK = project(K, W)
    F_proj = PK.face_indices(u)
    F = K.face_indices(u)
    lhs_cone = HCone.normal_cone(PK, F_proj, W)
    rhs_cone = HCone.normal_cone(K, F, W)
    cone_ok = lhs_cone == rhs_cone
    span_t = lhs_cone.span()
    ts_lhs = W.intersect(span_t.perp())
    TS = K.subpolytope(F).pspan()
    ts_rhs = Subspace([W.project(b) for b in TS.basis], K.n)
    return {
        "cone_equal": cone_ok,
        "ts_lhs": ts_lhs,
        "ts_rhs": ts_rhs,
        "ts_equal": ts_lhs == ts_rhs,
        "holds": cone_ok and ts_lhs == ts_rhs,
    }
