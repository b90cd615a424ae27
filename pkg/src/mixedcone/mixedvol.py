"""Mixed volumes and atomic mixed area measures of polytope tuples.

Atom weights are lattice-normalized: an atom ``(w, rho)`` with primitive
integer ``w`` carries the mass ``rho * |w|`` at ``w / |w|``.  With this
convention ``n V(C_1, ..., C_n) = sum_w h_{C_n}(w) rho_w`` and everything
stays rational.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

from .errors import BodiesNotInSubspace, DimensionMismatch, InternalError, SizeError
from .exact import EpsScalar, Subspace, det, dot, format_rational, qnorm, vsub
from .polytope import Polytope, SumFan, minkowski_sum, tuple_atoms

__all__ = [
    "AtomicAreaMeasure",
    "EpsAtom",
    "mixed_area_measure",
    "eps_area_atoms",
    "mixed_volume",
    "volume",
    "volume_oracle",
    "volume_polynomial",
    "afi_gap",
    "reduction_check",
    "subspace_mixed_volume",
    "atom_weight",
    "choose_axis",
]


def choose_axis(w):
    """Coordinate used to project out of ``w``'s orthogonal complement.

    Rational ``w``: the largest ``|w_k|``, smallest index on ties.  Over
    ``Q[eps]`` the largest nonzero constant entry is preferred, then the entry
    of least vanishing order.
    """
    if any(isinstance(x, EpsScalar) for x in w):
        best = None
        for k, x in enumerate(w):
            if x == 0:
                continue
            if not isinstance(x, EpsScalar) or x.is_constant():
                c = abs(x if not isinstance(x, EpsScalar) else x.constant())
                key = (0, -c, k)
            else:
                key = (1, x.order, k)
            if best is None or key < best[0]:
                best = (key, k)
        return best[1]
    best, arg = -1, None
    for k, x in enumerate(w):
        if abs(x) > best:
            best, arg = abs(x), k
    return arg


def _drop(P, k):
    return Polytope._trusted([v[:k] + v[k + 1:] for v in P.vertices], P.n - 1)


def _projected_faces(bodies, face, k):
    return tuple(_drop(B.subpolytope(F), k) for B, F in zip(bodies, face))


def _has_eps(bodies):
    return any(not B.is_rational() for B in bodies)


# ---------------------------------------------------------------------------
# rational recursion


@lru_cache(maxsize=1 << 17)
def _mv_q(bodies):
    n = len(bodies)
    if n == 0:
        return 1
    if any(len(B.vertices) == 1 for B in bodies):
        return 0
    last = bodies[-1]
    total = 0
    for w, rho in _atoms_q(bodies[:-1], n):
        total += last.h(w) * rho
    return qnorm(Fraction(total) / n)


@lru_cache(maxsize=1 << 17)
def _atoms_q(bodies, n):
    out = []
    for w, face in tuple_atoms(bodies, n):
        rho = _weight_q(bodies, w, face, choose_axis(w))
        if rho != 0:
            out.append((w, rho))
    return tuple(out)


def _weight_q(bodies, w, face, k):
    vproj = _mv_q(_projected_faces(bodies, face, k))
    return qnorm(Fraction(vproj) / abs(w[k]))


def atom_weight(bodies, w, axis=None):
    """Lattice weight of the atom at ``w`` computed through coordinate ``axis``."""
    n = len(bodies) + 1
    face = tuple(B.face_indices(w) for B in bodies)
    k = choose_axis(w) if axis is None else axis
    if w[k] == 0:
        raise ValueError("projection axis must have w_k != 0")
    return _weight_q(tuple(bodies), tuple(w), face, k)


# ---------------------------------------------------------------------------
# eps recursion: values are kept as fractions N/D with D > 0 and reduced by
# exact division whenever possible (mixed volumes of polynomial families are
# polynomial, so the final division always succeeds)


def _reduce(N, D):
    if D == 1:
        return N, 1
    try:
        if isinstance(N, EpsScalar) or isinstance(D, EpsScalar):
            q = EpsScalar.lift(N).exact_div(D)
            return (q.constant() if q.is_constant() else q), 1
        return qnorm(Fraction(N) / D), 1
    except Exception:
        return N, D


def _mv_eps(bodies):
    n = len(bodies)
    if n == 0:
        return 1, 1
    if any(len(B.vertices) == 1 for B in bodies):
        return 0, 1
    last = bodies[-1]
    N, D = 0, 1
    for a in eps_area_atoms(bodies[:-1], n):
        tn = last.h(a.w) * a.vproj
        td = abs(a.w[a.axis])
        if td == D:
            N = N + tn
        else:
            N, D = N * td + tn * D, D * td
        N, D = _reduce(N, D)
    return _reduce(N, D * n)


@dataclass(frozen=True)
class EpsAtom:
    """Atom of an eps-family measure: weight ``vproj / |w[axis]|``."""

    w: tuple
    axis: int
    vproj: object
    face: tuple = field(compare=False, default=())

    @property
    def sign(self):
        v = self.vproj
        return v.sign() if isinstance(v, EpsScalar) else (v > 0) - (v < 0)

    def limit_direction(self):
        from .polytope import normalize_direction

        lim = tuple(x.limit() if isinstance(x, EpsScalar) else x for x in self.w)
        return normalize_direction(lim)


def eps_area_atoms(bodies, n=None):
    """Atoms of the mixed area measure of a tuple over ``Q[eps]``."""
    bodies = tuple(bodies)
    if n is None:
        n = len(bodies) + 1
    out = []
    for w, face in tuple_atoms(bodies, n):
        k = choose_axis(w)
        N, D = _mv_eps(_projected_faces(bodies, face, k))
        if D != 1:
            raise InternalError("mixed volume of a polynomial family is not polynomial")
        if N != 0:
            out.append(EpsAtom(w, k, N, face))
    return out


# ---------------------------------------------------------------------------
# public api


@dataclass(frozen=True)
class AtomicAreaMeasure:
    n: int
    atoms: tuple

    def weights(self):
        return dict(self.atoms)

    def directions(self):
        return {w for w, _ in self.atoms}

    def to_json(self):
        return {
            "dim": self.n,
            "atoms": [{"w": [format_rational(x) for x in w], "rho": format_rational(r)} for w, r in self.atoms],
        }


def _check_bodies(bodies, n):
    for B in bodies:
        if B.n != n:
            raise DimensionMismatch(f"body of dimension {B.n} in R^{n}")


def mixed_area_measure(bodies, n=None):
    bodies = tuple(bodies)
    if n is None:
        n = bodies[0].n if bodies else 1
    if len(bodies) != n - 1:
        raise SizeError(f"mixed area measure in R^{n} needs {n - 1} bodies, got {len(bodies)}")
    _check_bodies(bodies, n)
    if _has_eps(bodies):
        raise TypeError("use eps_area_atoms for eps-families")
    return AtomicAreaMeasure(n, tuple(sorted(_atoms_q(bodies, n))))


def mixed_volume(bodies):
    bodies = tuple(bodies)
    n = len(bodies)
    if n == 0:
        return 1
    _check_bodies(bodies, bodies[0].n)
    if bodies[0].n != n:
        raise SizeError(f"mixed volume in R^{bodies[0].n} needs {bodies[0].n} bodies, got {n}")
    if _has_eps(bodies):
        N, D = _mv_eps(bodies)
        if D != 1:
            raise InternalError("mixed volume of a polynomial family is not polynomial")
        return N
    return _mv_q(bodies)


def volume(P):
    if P.dim < P.n:
        return 0
    return mixed_volume((P,) * P.n)


def volume_oracle(bodies):
    """Mixed volume from volumes of Minkowski combinations.

    ``vol(l_1 C_1 + ... + l_n C_n)`` is a homogeneous polynomial of degree n
    whose ``l_1 ... l_n`` coefficient is ``n! V(C_1, ..., C_n)``.  The n-fold
    mixed forward difference at the origin isolates exactly that coefficient,
    so only the 0/1 corner of the interpolation grid is needed.
    """
    bodies = tuple(bodies)
    n = len(bodies)
    if n == 0:
        raise SizeError("volume oracle needs at least one body")
    if bodies[0].n != n:
        raise SizeError(f"{n} bodies in R^{bodies[0].n}")
    total = 0
    for r in range(1, n + 1):
        for S in combinations(range(n), r):
            P = minkowski_sum([bodies[i] for i in S])
            total += (-1) ** (n - r) * volume(P)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return qnorm(Fraction(total) / fact)


def volume_polynomial(bodies):
    """All coefficients of ``vol(sum l_i C_i)`` by interpolation on ``{0..n}^n``.

    Returns a dict from exponent tuples to rational coefficients.
    """
    bodies = tuple(bodies)
    n = len(bodies)
    grid = {}
    for idx in _grid(n, n):
        parts = [bodies[i].scale(idx[i]) for i in range(n) if idx[i]]
        P = minkowski_sum(parts) if parts else Polytope.point((0,) * n)
        grid[idx] = Fraction(volume(P))
    coeffs = grid
    for axis in range(n):
        coeffs = _newton_axis(coeffs, n, axis)
    return {k: qnorm(v) for k, v in coeffs.items() if v != 0}


def _grid(n, top):
    if n == 0:
        yield ()
        return
    for rest in _grid(n - 1, top):
        for i in range(top + 1):
            yield rest + (i,)


def _newton_axis(values, n, axis):
    """Convert samples at 0..n along ``axis`` into monomial coefficients."""
    out = {}
    others = {k[:axis] + k[axis + 1:] for k in values}
    for o in others:
        ys = [Fraction(values[o[:axis] + (i,) + o[axis:]]) for i in range(n + 1)]
        c = _interp_monomial(ys)
        for p, v in enumerate(c):
            out[o[:axis] + (p,) + o[axis:]] = v
    return out


def _interp_monomial(ys):
    """Monomial coefficients of the polynomial through ``(i, ys[i])``."""
    m = len(ys)
    dd = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / j
    poly = [Fraction(0)] * m
    basis = [Fraction(1)]
    for j in range(m):
        for p, b in enumerate(basis):
            poly[p] += dd[j] * b
        nb = [Fraction(0)] * (len(basis) + 1)
        for p, b in enumerate(basis):
            nb[p + 1] += b
            nb[p] -= j * b
        basis = nb
    return poly


def afi_gap(K, L, rest):
    rest = tuple(rest)
    n = len(rest) + 2
    if K.n != n or L.n != n:
        raise SizeError("AFI needs n-2 reference bodies in R^n")
    mixed = mixed_volume((K, L) + rest)
    lhs = mixed * mixed
    rhs = mixed_volume((K, K) + rest) * mixed_volume((L, L) + rest)
    gap = qnorm(lhs - rhs)
    if gap < 0:
        raise InternalError("negative Alexandrov-Fenchel gap")
    return lhs, rhs, gap


# ---------------------------------------------------------------------------
# reduction formulas


def _centered(P):
    v0 = P.vertices[0]
    return Polytope._trusted([vsub(v, v0) for v in P.vertices], P.n)


def subspace_mixed_volume(bodies, W):
    """Mixed volume of bodies parallel to ``W`` in the coordinates of its basis.

    Returns ``(V, g)`` where the true ``dim W``-dimensional mixed volume is
    ``V * sqrt(g)`` and ``g`` is the Gram determinant of the basis.
    """
    bodies = tuple(bodies)
    if len(bodies) != W.dim:
        raise SizeError("one body per dimension of the subspace")
    coords = []
    for P in bodies:
        if not W.contains_subspace(P.pspan()):
            raise BodiesNotInSubspace("body not parallel to the subspace")
        C = _centered(P)
        coords.append(Polytope([W.coordinates(v) for v in C.vertices], W.dim))
    g = W.gram_det() if W.dim else 1
    if W.dim == 0:
        return 1, 1
    return mixed_volume(coords), g


def _project_onto(P, W):
    M = W.projection_matrix()
    n = P.n
    return Polytope([tuple(sum(M[i][j] * v[j] for j in range(n)) for i in range(n)) for v in P.vertices], n)


def reduction_check(bodies, k, E):
    """Both sides of the reduction formulas for bodies whose first k lie in E.

    Volume form (n bodies): ``binom(n,k) V = V_E(first k) V_{E^perp}(rest)``.
    Measure form (n-1 bodies): the mixed area measure equals
    ``V_E(first k) / binom(n-1,k)`` times the mixed area measure of the
    projected rest inside ``E^perp``.  Masses are compared squared, so no
    square roots appear.
    """
    bodies = tuple(bodies)
    if E.dim != k:
        raise BodiesNotInSubspace(f"subspace has dimension {E.dim}, expected {k}")
    for P in bodies[:k]:
        if not E.contains_subspace(P.pspan()):
            raise BodiesNotInSubspace("a leading body is not parallel to E")
    n = E.n
    Eperp = E.perp()
    head = bodies[:k]
    rest = [_project_onto(P, Eperp) for P in bodies[k:]] if Eperp.dim else []
    vh, gh = subspace_mixed_volume(head, E) if k else (1, 1)
    report = {"n": n, "k": k}
    if len(bodies) == n:
        lhs = comb(n, k) * mixed_volume(bodies)
        vr, _ = subspace_mixed_volume(rest, Eperp) if Eperp.dim else (1, 1)
        frame = [list(b) for b in E.basis] + [list(b) for b in Eperp.basis]
        scale = abs(det(frame)) if frame else 1
        rhs = qnorm(vh * vr * scale)
        report.update(form="volume", lhs=qnorm(lhs), rhs=rhs, holds=qnorm(lhs) == rhs)
        return report
    if len(bodies) != n - 1:
        raise SizeError("reduction needs n or n-1 bodies")
    S = mixed_area_measure(bodies, n)
    lhs = {w: qnorm(comb(n - 1, k) ** 2 * r * r * dot(w, w)) for w, r in S.atoms}
    rhs = {}
    if vh != 0 and Eperp.dim >= 1:
        fan = SumFan(tuple(rest), n)
        dd = Eperp.dim
        if fan.dim == dd:
            dirs = [w for w, _ in fan.facets]
        elif fan.dim == dd - 1:
            inner = Subspace(fan.direction_basis, n).perp().intersect(Eperp)
            w0 = inner.basis[0]
            from .polytope import normalize_direction

            dirs = [normalize_direction(w0), normalize_direction(tuple(-x for x in w0))]
        else:
            dirs = []
        for w in dirs:
            U = Subspace.span([w], n).perp().intersect(Eperp)
            faces = [P.face(w) for P in rest]
            vu, gu = subspace_mixed_volume(faces, U) if U.dim else (1, 1)
            mass_sq = qnorm(Fraction(vh) ** 2 * gh * Fraction(vu) ** 2 * gu)
            if mass_sq != 0:
                rhs[w] = mass_sq
    report.update(form="measure", lhs=lhs, rhs=rhs, holds=lhs == rhs)
    return report
