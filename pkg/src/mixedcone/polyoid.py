"""Polyoids given by discrete or eps-family generating measures.

A family atom stands for the bodies ``family(1/l)``, ``l = 1, 2, ...`` with
summable positive weights, together with their limit.  Only positivity of
weights matters for supports, so schedules are tags.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import product

from .errors import DimensionMismatch, SizeError, TrivialSubspace, UnsupportedMeasureShape, ZeroDirection
from .exact import EpsScalar, Subspace, dot, format_rational, qnorm, to_rational, unit_fraction_roots, vsub
from .criticality import classify
from .mixedvol import eps_area_atoms, mixed_area_measure
from .polytope import Polytope, PolytopeFamily, minkowski_sum, normalize_direction, tuple_atoms
from .touching import HCone, cusp, cusp_family

__all__ = [
    "GeneratingMeasure",
    "FamilyAtom",
    "Verdict",
    "measure_projection",
    "ts_nontrivial",
    "certify_extreme",
    "supp_membership",
    "support_equal_on_ext",
    "extreme_rays",
    "normal_cone_intersection_check",
]


@dataclass(frozen=True)
class FamilyAtom:
    family: PolytopeFamily
    schedule: str = "geometric"


@dataclass(frozen=True)
class GeneratingMeasure:
    """Weighted polytope atoms plus eps-family atoms."""

    atoms: tuple = ()
    families: tuple = ()
    n: int = field(default=None)

    def __post_init__(self):
        atoms = tuple((to_rational(w), P) for w, P in self.atoms)
        for w, _ in atoms:
            if w <= 0:
                raise ValueError("atom weights must be positive")
        fams = tuple(f if isinstance(f, FamilyAtom) else FamilyAtom(f) for f in self.families)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "families", fams)
        dims = {P.n for _, P in atoms} | {f.family.n for f in fams}
        if self.n is not None:
            dims.add(self.n)
        if len(dims) != 1:
            raise DimensionMismatch("measure atoms of differing dimension")
        object.__setattr__(self, "n", dims.pop())

    @classmethod
    def of(cls, P):
        if isinstance(P, GeneratingMeasure):
            return P
        if isinstance(P, PolytopeFamily):
            return cls((), (FamilyAtom(P),))
        return cls(((1, P),))

    def is_discrete(self):
        return not self.families

    def polytope(self):
        """Weighted Minkowski sum (discrete measures only)."""
        if not self.is_discrete():
            raise UnsupportedMeasureShape("only discrete measures are polytopes")
        return minkowski_sum([P.scale(w) for w, P in self.atoms])

    def support_bodies(self):
        """Rational support bodies: discrete atoms and family limits."""
        out = [P for _, P in self.atoms]
        out.extend(f.family.limit() for f in self.families)
        return out


def _merge(atoms):
    acc = {}
    for w, P in atoms:
        acc[P] = acc.get(P, 0) + w
    return tuple((qnorm(w), P) for P, w in sorted(acc.items(), key=lambda t: t[0]))


def measure_projection(mu, W):
    """Image measure under the orthogonal projection onto ``W``."""
    if W.dim == 0:
        raise TrivialSubspace("projection onto the zero subspace")
    M = W.projection_matrix()
    n = mu.n

    def img(P):
        return Polytope([tuple(sum(M[i][j] * v[j] for j in range(n)) for i in range(n)) for v in P.vertices], n)

    atoms = _merge([(w, img(P)) for w, P in mu.atoms])
    fams = tuple(FamilyAtom(f.family.map(M), f.schedule) for f in mu.families)
    return GeneratingMeasure(atoms, fams, n)


# ---------------------------------------------------------------------------
# cusps and touching spaces


def _tie_samples(fam, u):
    """Parameters ``l`` where two trajectories tie in direction ``u``."""
    out = set()
    T = fam.trajectories
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            p = EpsScalar.lift(dot(vsub(T[i], T[j]), u))
            if p.c:
                out.update(unit_fraction_roots(p))
    return sorted(out)


def _check_u(u, n):
    if all(x == 0 for x in u):
        raise ZeroDirection("zero direction")
    if len(u) != n:
        raise DimensionMismatch("direction has the wrong dimension")


def ts_nontrivial(mu, u):
    """Whether the polyoid's touching space at ``u`` is nontrivial.

    True iff the maximal cusp constants over the support are not bounded
    away from zero.
    """
    mu = GeneratingMeasure.of(mu)
    _check_u(u, mu.n)
    for P in mu.support_bodies():
        if cusp(P, u).max_cusp_sq == 0:
            return True
    for f in mu.families:
        fam = f.family
        if cusp_family(fam.body(), u)[0]:
            return True
        for l in _tie_samples(fam, u):
            if cusp(fam.at(_unit(l)), u).max_cusp_sq == 0:
                return True
    return False


def _unit(l):
    return Fraction(1, l)


def _coefficient_span(vectors, n):
    """Span of all values of polynomial vectors (their coefficient vectors)."""
    out = []
    for v in vectors:
        deg = max((x.degree if isinstance(x, EpsScalar) else 0) for x in v)
        for k in range(deg + 1):
            row = []
            for x in v:
                if isinstance(x, EpsScalar):
                    row.append(x.c[k] if k < len(x.c) else 0)
                else:
                    row.append(x if k == 0 else 0)
            out.append(tuple(row))
    return Subspace(out, n)


def _face_span(P, u):
    F = P.face_indices(u)
    V = P.vertices
    idx = sorted(F)
    vecs = [vsub(V[i], V[idx[0]]) for i in idx[1:]]
    return _coefficient_span(vecs, P.n)


def touching_lower_bound(mu, u):
    """``(L, exact)``: a subspace contained in TS and whether it is all of TS."""
    mu = GeneratingMeasure.of(mu)
    n = mu.n
    if mu.is_discrete():
        M = mu.polytope()
        return _face_span(M, u), True
    vecs = []
    for P in mu.support_bodies():
        vecs.extend(_face_span(P, u).basis)
    for f in mu.families:
        vecs.extend(_face_span(f.family.body(), u).basis)
        for l in _tie_samples(f.family, u):
            vecs.extend(_face_span(f.family.at(_unit(l)), u).basis)
    return Subspace(vecs, n), False


class Verdict(str, Enum):
    EXTREME = "EXTREME"
    NOT_EXTREME = "NOT_EXTREME"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ExtremeCertificate:
    verdict: Verdict
    entries: tuple  # per entry: ("exact" | "lower" | "unknown", Subspace)
    reason: str

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "reason": self.reason,
            "entries": [
                {"status": s, "basis": [[format_rational(x) for x in b] for b in L.canonical_basis()]}
                for s, L in self.entries
            ],
        }


def certify_extreme(entries, u):
    """Three-valued decision whether ``u`` is an extreme normal of the tuple."""
    entries = [GeneratingMeasure.of(m) for m in entries]
    u = tuple(u)
    n = len(u)
    if len(entries) != n - 1:
        raise SizeError(f"{len(entries)} polyoids for direction in R^{n}")
    _check_u(u, n)
    status = []
    for mu in entries:
        if mu.n != n:
            raise DimensionMismatch("polyoid of the wrong dimension")
        L, exact = touching_lower_bound(mu, u)
        if exact:
            status.append(("exact", L))
        elif L.dim > 0:
            status.append(("lower", L))
        elif ts_nontrivial(mu, u):
            status.append(("unknown", L))
        else:
            status.append(("exact", L))
    info = tuple(status)
    if any(s == "exact" and L.dim == 0 for s, L in status):
        return ExtremeCertificate(Verdict.NOT_EXTREME, info, "a touching space is trivial")
    known = [L for s, L in status if s != "unknown"]
    unknown = sum(1 for s, _ in status if s == "unknown")
    c = classify(known)
    if unknown == 0 and c.semicritical:
        return ExtremeCertificate(Verdict.EXTREME, info, "touching spaces are semicritical")
    if unknown == 1 and c.critical:
        return ExtremeCertificate(Verdict.EXTREME, info, "known part is critical, one nontrivial unknown")
    uperp = Subspace.span([u], n).perp()
    relaxed = [L if s == "exact" else uperp for s, L in status]
    if not classify(relaxed).semicritical:
        return ExtremeCertificate(Verdict.NOT_EXTREME, info, "not semicritical even with unknowns maximal")
    return ExtremeCertificate(Verdict.UNKNOWN, info, "lower bounds inconclusive")


# ---------------------------------------------------------------------------
# supports of mixed area measures


@dataclass(frozen=True)
class Branch:
    direction: tuple
    limit: tuple
    eventually_positive: bool
    combination: tuple


@dataclass
class LimitSupportSet:
    exact_directions: set
    branches: list

    def to_json(self):
        def fmt(v):
            from .serialize import dump_scalar

            return [dump_scalar(x) for x in v]

        return {
            "exact_directions": [[format_rational(x) for x in w] for w in sorted(self.exact_directions)],
            "branches": [
                {"direction": fmt(b.direction), "limit": [format_rational(x) for x in b.limit], "eventually_positive": b.eventually_positive}
                for b in self.branches
            ],
        }


def _entry_options(mu):
    if len(mu.families) > 1:
        raise UnsupportedMeasureShape("at most one family atom per entry")
    opts = [("atom", P) for _, P in mu.atoms]
    for f in mu.families:
        opts.append(("family", f.family))
        opts.append(("limit", f.family.limit()))
    return opts


def _body(opt):
    kind, obj = opt
    return obj.body() if kind == "family" else obj


def limit_support_set(entries, n):
    entries = [GeneratingMeasure.of(m) for m in entries]
    exact, branches = set(), []
    options = [_entry_options(mu) for mu in entries]
    for combo in product(*options):
        bodies = tuple(_body(o) for o in combo)
        if all(o[0] != "family" for o in combo):
            for w, r in mixed_area_measure(bodies, n).atoms:
                if r > 0:
                    exact.add(w)
            continue
        for a in eps_area_atoms(bodies, n):
            if a.sign > 0:
                if all(not isinstance(x, EpsScalar) for x in a.w):
                    exact.add(a.w)
                else:
                    branches.append(Branch(a.w, a.limit_direction(), True, combo))
    return LimitSupportSet(exact, branches)


def _parallel_samples(w, u):
    """Parameters ``l`` where the eps-direction ``w`` is parallel to ``u``."""
    n = len(u)
    cands = None
    for i in range(n):
        for j in range(i + 1, n):
            p = EpsScalar.lift(w[i] * u[j] - w[j] * u[i])
            if not p.c:
                continue
            roots = set(unit_fraction_roots(p))
            cands = roots if cands is None else cands & roots
    return sorted(cands or ())


def supp_membership(entries, u):
    """Whether ``u`` lies in the support of the mixed area measure of polyoids."""
    entries = [GeneratingMeasure.of(m) for m in entries]
    u = tuple(u)
    n = len(u)
    if len(entries) != n - 1:
        raise SizeError(f"{len(entries)} polyoids for direction in R^{n}")
    _check_u(u, n)
    target = normalize_direction(u)
    S = limit_support_set(entries, n)
    how = None
    if target in S.exact_directions:
        how = "exact atom"
    if how is None:
        for b in S.branches:
            if b.limit == target:
                how = "branch limit"
                break
    if how is None:
        for b in S.branches:
            for l in _parallel_samples(b.direction, u):
                x = _unit(l)
                bodies = tuple(o[1].at(x) if o[0] == "family" else o[1] for o in b.combination)
                if target in {w for w, r in mixed_area_measure(bodies, n).atoms if r > 0}:
                    how = f"branch sample l={l}"
                    break
            if how:
                break
    return {"member": how is not None, "via": how, "support": S}


# ---------------------------------------------------------------------------
# polytope tuples


def extreme_rays(bodies, n=None):
    """Fan rays of the tuple's sum whose touching-space tuple is semicritical."""
    bodies = tuple(bodies)
    n = n if n is not None else (bodies[0].n if bodies else 1)
    out = []
    for w, face in tuple_atoms(bodies, n):
        spaces = [B.subpolytope(F).pspan() for B, F in zip(bodies, face)]
        if classify(spaces).semicritical:
            out.append(w)
    return out


def support_equal_on_ext(K, L, bodies):
    bodies = tuple(bodies)
    n = K.n
    if L.n != n or len(bodies) != n - 1 or any(B.n != n for B in bodies):
        raise SizeError("support comparison needs n-1 bodies in R^n")
    return all(K.h(w) == L.h(w) for w in extreme_rays(bodies, n))


def normal_cone_intersection_check(mu, u):
    """Intersection of the support bodies' normal cones at ``u`` against the
    normal cone of the (discrete) polyoid."""
    mu = GeneratingMeasure.of(mu)
    M = mu.polytope()
    rows = set()
    W = None
    for _, P in mu.atoms:
        C = HCone.normal_cone(P, P.face_indices(u))
        W = C.W
        rows.update(C.rows)
    inter = HCone(tuple(sorted(rows)), W)
    cone = HCone.normal_cone(M, M.face_indices(u))
    contained = cone.contains_cone(inter)
    return {"contained": contained, "equal": contained and inter.contains_cone(cone)}
