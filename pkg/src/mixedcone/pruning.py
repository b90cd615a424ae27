"""Pruning of eps-polytope families and witness polytopes.

A prune step keeps the trajectories whose limits lie in the ``u``-face of
the limit polytope, re-centers them at the first such trajectory and
rescales by ``eps**-m`` where ``m`` is the smallest vanishing order among
the re-centered trajectories.  The rescale replaces a diameter
normalization; the two differ by a factor bounded above and below, so
limits agree up to positive scaling.
"""

from dataclasses import dataclass
from math import inf

from .errors import InternalError, PreconditionError, ZeroDirection
from .exact import EpsScalar, dot, vsub
from .mixedvol import eps_area_atoms
from .polytope import Polytope, PolytopeFamily, normalize_direction

__all__ = [
    "PruneStep",
    "PruneTrace",
    "prune_step",
    "prune_star_witness",
    "sticky_check",
    "local_measure_equality_check",
]

RESCALE_NOTE = "rescaled by eps^-m instead of normalizing the diameter to 1"


@dataclass(frozen=True)
class PruneStep:
    I: tuple
    i0: int
    m: int
    changed: bool


@dataclass(frozen=True)
class PruneTrace:
    steps: tuple
    fixpoint: PolytopeFamily
    witness: Polytope

    @property
    def effective_prunes(self):
        return sum(1 for s in self.steps if s.changed)


def _order(x):
    return x.order if isinstance(x, EpsScalar) else (inf if x == 0 else 0)


def _shift(x, m):
    if m == 0:
        return x
    y = EpsScalar.lift(x).shift(-m)
    return y.constant() if y.is_constant() else y


def _check_u(u):
    if all(x == 0 for x in u):
        raise ZeroDirection("zero direction")


def prune_step(F, u, scale=1):
    """One prune step; returns ``(family, PruneStep)``.

    ``scale`` multiplies a nontrivial ``eps**-m`` rescale by a positive rational.
    """
    _check_u(u)
    lim = F.limit_points()
    h = max(dot(p, u) for p in lim)
    I = [i for i, p in enumerate(lim) if dot(p, u) == h]
    i0 = I[0]
    base = F.trajectories[i0]
    diffs = [vsub(F.trajectories[i], base) for i in I]
    orders = [min(_order(x) for x in d) for d in diffs[1:]]
    finite = [o for o in orders if o != inf]
    m = min(finite) if finite else 0
    factor = scale if m > 0 else 1
    new = [tuple(_shift(x, m) * factor for x in d) for d in diffs]
    G = PolytopeFamily(new, F.n)
    return G, PruneStep(tuple(i + 1 for i in I), i0 + 1, m, G != F)


def prune_star_witness(F, u, scale=1):
    """Iterate prune steps to a fixpoint; the witness is the fixpoint's limit."""
    from .polyoid import GeneratingMeasure, ts_nontrivial

    _check_u(u)
    from_measure = isinstance(F, GeneratingMeasure)
    if from_measure:
        mu = F
        if not ts_nontrivial(mu, u):
            raise PreconditionError("ts_nontrivial", "touching space is trivial")
        fam = next((f.family for f in mu.families if sticky_check(f.family, u)), None)
        if fam is None:
            body = next((P for P in mu.support_bodies() if len(P.face_indices(u)) > 1), None)
            if body is None:
                raise PreconditionError("sticky", "no sticky family or flat support body")
            fam = PolytopeFamily(body.vertices, body.n)
        F = fam
    steps = []
    guard = 2 * len(F) + 2
    for _ in range(guard):
        G, step = prune_step(F, u, scale)
        steps.append(step)
        if not step.changed:
            break
        F = G
    else:
        raise InternalError("pruning did not reach a fixpoint")
    W = F.limit()
    if any(dot(v, u) != 0 for v in W.vertices) or (0,) * W.n not in W.vertices:
        raise InternalError("witness must lie in u^perp and contain 0")
    if from_measure and len(W.vertices) < 2:
        raise InternalError("witness from a nontrivial touching space is a point")
    return PruneTrace(tuple(steps), F, W)


def sticky_check(F, u):
    """Whether some u-face vertex has a partner approaching it tangentially."""
    _check_u(u)
    body = F.body()
    face = {body.vertices[i] for i in body.face_indices(u)}
    T = F.trajectories
    for i, vi in enumerate(T):
        if vi not in face:
            continue
        for j, vj in enumerate(T):
            if i == j or vi == vj:
                continue
            d = vsub(vi, vj)
            ip = _order(dot(d, u))
            nn = _order(dot(d, d))
            if 2 * ip > nn:
                return True
    return False


def local_measure_equality_check(F, u, rest=()):
    """Compare measure atoms near ``u`` before and after one prune step.

    Near ``u`` means: atoms whose direction tends to ``u``.  Weights must
    agree up to the common factor ``eps**m``.
    """
    _check_u(u)
    rest = tuple(rest)
    n = F.n
    target = normalize_direction(u)
    G, step = prune_step(F, u)
    m = step.m

    def near(bodies):
        return [a for a in eps_area_atoms(bodies, n) if a.limit_direction() == target]

    A = near((F.body(),) + rest)
    B = near((G.body(),) + rest)
    matched, unmatched = [], []
    remaining = list(B)
    for a in A:
        hit = None
        for b in remaining:
            if b.w == a.w and b.axis == a.axis:
                hit = b
                break
        if hit is None:
            unmatched.append(("before", a.w))
            continue
        remaining.remove(hit)
        if EpsScalar.lift(a.vproj) != EpsScalar.lift(hit.vproj).shift(m):
            unmatched.append(("weight", a.w))
        else:
            matched.append((a.w, a.vproj, hit.vproj))
    unmatched.extend(("after", b.w) for b in remaining)
    return {
        "ok": not unmatched and bool(matched),
        "lambda_order": m,
        "matched": matched,
        "unmatched": unmatched,
        "note": RESCALE_NOTE,
    }
