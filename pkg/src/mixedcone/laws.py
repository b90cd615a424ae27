"""Named property suites over seeded random instances.

Each law returns a :class:`LawResult`; ``failures`` holds short
descriptions of counterexamples (empty on success).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from . import generators as gen
from .criticality import classify, independent_selection, is_semicritical, switching
from .errors import PreconditionError
from .exact import EpsScalar, Subspace, dot
from .mixedvol import (
    afi_gap,
    atom_weight,
    mixed_area_measure,
    mixed_volume,
    reduction_check,
    volume_oracle,
)
from .polyoid import (
    GeneratingMeasure,
    Verdict,
    certify_extreme,
    extreme_rays,
    limit_support_set,
    supp_membership,
    support_equal_on_ext,
    ts_nontrivial,
)
from .polytope import Polytope, PolytopeFamily, fan_cells, minkowski_sum
from .pruning import local_measure_equality_check, prune_star_witness, sticky_check
from .touching import cusp, projection_ts_check, touching_space_polytope

__all__ = ["LawResult", "LAWS", "run_law", "worked_examples"]


@dataclass
class LawResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.checked > 0 and not self.failures

    def fail(self, msg):
        if len(self.failures) < 20:
            self.failures.append(msg)
        else:
            self.details["truncated"] = self.details.get("truncated", 0) + 1

    def to_json(self):
        return {
            "law": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": self.failures,
            **self.details,
        }


def _positive_atoms(bodies, n):
    return {w for w, r in mixed_area_measure(bodies, n).atoms if r > 0}


# ---------------------------------------------------------------------------
# polytope support characterization


def suppchar_poly(seed=0, count=200):
    res = LawResult("suppchar-poly")
    rng = gen.rng_for(seed, "suppchar")
    for t in range(count):
        n = 2 + t % 2
        bodies = gen.random_tuple(rng, n, n - 1)
        atoms = _positive_atoms(bodies, n)
        rays = set(extreme_rays(bodies, n))
        if atoms != rays:
            res.fail(f"instance {t}: atoms {sorted(atoms)} != extreme rays {sorted(rays)}")
        for cell in fan_cells(bodies):
            if cell.cone_dim < 2:
                continue
            spaces = [B.subpolytope(F).pspan() for B, F in zip(bodies, cell.per_body_faces)]
            if classify(spaces).semicritical:
                res.fail(f"instance {t}: cell at {cell.representative} of cone dim {cell.cone_dim} is extreme")
        res.checked += 1
    return res


def oracle(seed=0, count=200):
    res = LawResult("oracle")
    rng = gen.rng_for(seed, "oracle")
    for t in range(count):
        n = 2 + t % 2
        bodies = gen.random_tuple(rng, n, n, max_vertices=4)
        v = mixed_volume(bodies)
        if v != volume_oracle(bodies):
            res.fail(f"instance {t}: mixed_volume {v} != oracle {volume_oracle(bodies)}")
        last = bodies[-1]
        total = sum((last.h(w) * r for w, r in mixed_area_measure(bodies[:-1], n).atoms), Fraction(0))
        if total != n * v:
            res.fail(f"instance {t}: duality sum {total} != {n}*{v}")
        res.checked += 1
    return res


def matau(seed=0, count=100):
    """Atom weights depend only on the support sets at the atom direction."""
    res = LawResult("matau")
    rng = gen.rng_for(seed, "matau")
    while res.checked < count:
        n = rng.choice((2, 3))
        bodies = gen.random_tuple(rng, n, n - 1)
        atoms = mixed_area_measure(bodies, n).atoms
        if not atoms:
            continue
        w, r = atoms[rng.randrange(len(atoms))]
        C1 = bodies[0]
        top = C1.h(w)
        extra = []
        for _ in range(rng.randint(1, 3)):
            p = gen.random_point(rng, n)
            d = dot(p, w) - top
            if d >= 0:
                # push the point strictly below the supporting hyperplane
                s = Fraction(d + 1, dot(w, w))
                p = tuple(x - s * y for x, y in zip(p, w))
            extra.append(p)
        C1b = Polytope(list(C1.vertices) + extra, n)
        if C1b.face(w) != C1.face(w):
            res.fail(f"construction changed the face at {w}")
            continue
        new = (C1b,) + tuple(bodies[1:])
        r2 = atom_weight(new, w)
        if r2 != r:
            res.fail(f"weight at {w}: {r} became {r2}")
        res.checked += 1
    return res


# ---------------------------------------------------------------------------
# reduction formulas


def reduction(seed=0, count=100):
    res = LawResult("reduction")
    rng = gen.rng_for(seed, "reduction")
    degenerate = 0
    for t in range(count):
        n = rng.choice((2, 3))
        volume_form = t % 2 == 0
        k = rng.randint(1, n if volume_form else n - 1)
        E = gen.random_subspace(rng, n, k)
        degen = t % 5 == 4 and k >= 1
        inner = gen.random_subspace(rng, n, k - 1, ambient=E) if degen and k > 1 else (
            Subspace([], n) if degen else E
        )
        head = [gen.random_polytope_in(rng, inner, max_vertices=4) for _ in range(k)]
        size = n if volume_form else n - 1
        tail = [gen.random_polytope(rng, n, max_vertices=4) for _ in range(size - k)]
        rep = reduction_check(head + tail, k, E)
        if not rep["holds"]:
            res.fail(f"instance {t} ({rep['form']}, n={n}, k={k}): {rep['lhs']} != {rep['rhs']}")
        if degen:
            degenerate += 1
            empty = rep["lhs"] == 0 if rep["form"] == "volume" else rep["lhs"] == {}
            if not empty:
                res.fail(f"instance {t}: degenerate head but nonzero left side")
        res.checked += 1
    res.details["degenerate"] = degenerate
    return res


# ---------------------------------------------------------------------------
# criticality


def _span_corpus():
    """Distinct subspaces of R^3 spanned by {-1,0,1}-vectors, with point sets."""
    n = 3
    vecs = gen.ternary_vectors(n)
    seen = {}
    zero = (0,) * n
    seen[Subspace([], n).key()] = (Subspace([], n), [zero])
    for r in (1, 2, 3):
        for sub in combinations(vecs, r):
            S = Subspace(list(sub), n)
            if S.dim != r:
                continue
            seen.setdefault(S.key(), (S, [zero] + list(sub)))
    return list(seen.values())


def critindep(seed=0, count=200):
    """Selection-classification equivalence (exhaustive) plus reduction and additivity."""
    res = LawResult("critindep")
    corpus = _span_corpus()
    exhaustive = 0
    for size in (1, 2, 3):
        for tup in combinations_with_replacement(range(len(corpus)), size):
            spaces = [corpus[i][0] for i in tup]
            sets = [corpus[i][1] for i in tup]
            semi = is_semicritical(spaces)
            sel = independent_selection(sets)
            if semi != (sel is not None):
                res.fail(f"corpus tuple {tup}: semicritical={semi}, selection={sel}")
            exhaustive += 1
    res.details["exhaustive"] = exhaustive
    res.checked += exhaustive
    res.details["reduction"] = _crit_reduction(res, seed, count)
    res.details["additivity"] = _crit_additivity(res, seed, count)
    return res


def _crit_reduction(res, seed, count):
    rng = gen.rng_for(seed, "critred")
    for t in range(count):
        n = rng.choice((3, 4))
        m = rng.randint(2, n)
        k = rng.randint(1, m - 1)
        E = gen.random_subspace(rng, n, k)
        head = [gen.random_subspace(rng, n, rng.randint(0, k), ambient=E) for _ in range(k)]
        tail = [gen.random_subspace(rng, n, rng.randint(0, n)) for _ in range(m - k)]
        Ep = E.perp()
        proj = [Subspace([Ep.project(b) for b in A.basis], n) for A in tail]
        lhs = is_semicritical(head + tail)
        rhs = is_semicritical(head) and is_semicritical(proj)
        if lhs != rhs:
            res.fail(f"reduction instance {t}: {lhs} vs {rhs}")
        res.checked += 1
    return count


def _crit_additivity(res, seed, count):
    rng = gen.rng_for(seed, "critadd")
    for t in range(count):
        n = rng.choice((3, 4))
        m = rng.randint(1, n)
        B = gen.random_subspace(rng, n, rng.randint(0, n - 1))
        C = gen.random_subspace(rng, n, rng.randint(0, n - 1))
        rest = [gen.random_subspace(rng, n, rng.randint(0, n)) for _ in range(m - 1)]
        lhs = is_semicritical([B + C] + rest)
        rhs = is_semicritical([B] + rest) or is_semicritical([C] + rest)
        if lhs != rhs:
            res.fail(f"additivity instance {t}: {lhs} vs {rhs}")
        res.checked += 1
    return count


def switching_law(seed=0, count=500):
    res = LawResult("switching")
    rng = gen.rng_for(seed, "switch")
    while res.checked < count:
        n = rng.choice((3, 4))
        u = gen.random_direction(rng, n)
        W = Subspace.span([u], n).perp()
        T = [gen.random_subspace(rng, n, rng.randint(1, n - 1), ambient=W) for _ in range(n - 1)]
        if not is_semicritical(T):
            continue
        R = [gen.random_subspace(rng, n, rng.randint(1, n - 1), ambient=W) for _ in range(n - 1)]
        try:
            out = switching(T, R, u)
        except PreconditionError as exc:
            res.fail(f"unexpected precondition failure: {exc}")
            res.checked += 1
            continue
        I = [i - 1 for i in out.I]
        J = [i - 1 for i in out.J]
        ok = set(I) <= set(J) and bool(I)
        ok = ok and Subspace([b for i in I for b in R[i].basis], n).dim == len(I)
        mixed = [R[i] if i in J else T[i] for i in range(n - 1)]
        ok = ok and is_semicritical(mixed)
        if not ok:
            res.fail(f"switching postconditions fail for u={u}: I={out.I}, J={out.J}")
        res.checked += 1
    return res


# ---------------------------------------------------------------------------
# cusps and touching spaces


def tc4(seed=0, count=200, directions=5):
    res = LawResult("tc4")
    rng = gen.rng_for(seed, "tc4")
    for t in range(count):
        n = 2 + t % 2
        P = gen.random_polytope(rng, n)
        dirs = [gen.random_direction(rng, n) for _ in range(directions - 1)]
        facets = P.facets
        dirs.append(facets[rng.randrange(len(facets))][0] if facets else gen.random_direction(rng, n))
        for u in dirs:
            N, T, TS = touching_space_polytope(P, u)
            c = cusp(P, u).max_cusp_sq
            if (TS.dim == 0) != (c > 0):
                res.fail(f"polytope {P.vertices} at {u}: TS dim {TS.dim}, max_cusp_sq {c}")
            res.checked += 1
    return res


def tc3(seed=0, count=100):
    res = LawResult("tc3")
    rng = gen.rng_for(seed, "tc3")
    for t in range(count):
        n = 2 + t % 2
        P = gen.random_polytope(rng, n)
        W = gen.random_subspace(rng, n, rng.randint(1, n))
        u = (0,) * n
        while not any(u):
            u = gen.random_point_in(rng, W)
        rep = projection_ts_check(P, W, u)
        if not rep["holds"]:
            res.fail(f"polytope {P.vertices}, W {W.basis}, u {u}")
        res.checked += 1
    return res


def tc5(seed=0, count=100):
    res = LawResult("tc5")
    rng = gen.rng_for(seed, "tc5")
    samples = [Fraction(1, 10), Fraction(1, 5), Fraction(1, 2), Fraction(4, 5), Fraction(1)]
    for t in range(count):
        n = 2 + t % 2
        parts = [gen.random_polytope(rng, n, max_vertices=4) for _ in range(rng.randint(2, 3))]
        u = gen.random_direction(rng, n)
        total = minkowski_sum(parts)
        cs = cusp(total, u).max_cusp_sq
        each = [cusp(P, u).max_cusp_sq for P in parts]
        if cs != min(each):
            res.fail(f"instance {t}: sum cusp {cs} != min {min(each)}")
        for c in samples + sorted(set(x for x in each if x > 0)):
            if (c <= cs) != all(c <= e for e in each):
                res.fail(f"instance {t}: iff fails at c^2={c}")
        res.checked += 1
    return res


# ---------------------------------------------------------------------------
# polyoids


def _random_discrete(rng, n, atoms=3):
    out = []
    for _ in range(rng.randint(1, atoms)):
        out.append((Fraction(rng.randint(1, 3), rng.randint(1, 3)), gen.random_polytope(rng, n, max_vertices=4)))
    return GeneratingMeasure(tuple(out))


def suppint(seed=0, count=100):
    """Support of discrete polyoids vs touching spaces, plus the support decomposition."""
    res = LawResult("suppint")
    rng = gen.rng_for(seed, "suppint")
    reps = 0
    for t in range(count):
        n = 2 + t % 2
        mus = [_random_discrete(rng, n) for _ in range(n - 1)]
        polys = [mu.polytope() for mu in mus]
        support = limit_support_set(mus, n)
        direct = _positive_atoms(tuple(polys), n)
        if support.exact_directions != direct:
            res.fail(f"instance {t}: decomposition {sorted(support.exact_directions)} != {sorted(direct)}")
        union = set()
        for _, P in mus[0].atoms:
            union |= _positive_atoms((P,) + tuple(polys[1:]), n)
        if union != direct:
            res.fail(f"instance {t}: union over first measure {sorted(union)} != {sorted(direct)}")
        if any(b for b in support.branches):
            res.fail(f"instance {t}: branches on discrete input")
        for cell in fan_cells(polys):
            u = cell.representative
            member = u in support.exact_directions
            cert = certify_extreme(mus, u)
            if cert.verdict == Verdict.UNKNOWN:
                res.fail(f"instance {t}: UNKNOWN at {u}")
            if member != (cert.verdict == Verdict.EXTREME):
                res.fail(f"instance {t}: membership {member} vs {cert.verdict.value} at {u}")
            reps += 1
        res.checked += 1
    res.details["representatives"] = reps
    return res


def afi_nonneg(seed=0, count=500):
    res = LawResult("afi-nonneg")
    rng = gen.rng_for(seed, "afi")
    homothetic = 0
    for t in range(count):
        n = 2 + t % 2
        K = gen.random_polytope(rng, n, max_vertices=5)
        if t % 4 == 0:
            q = Fraction(rng.randint(1, 4), rng.randint(1, 3))
            L = K.scale(q).translate(gen.random_point(rng, n))
        else:
            L = gen.random_polytope(rng, n, max_vertices=5)
        rest = gen.random_tuple(rng, n, n - 2, max_vertices=4)
        lhs, rhs, gap = afi_gap(K, L, rest)
        if gap < 0:
            res.fail(f"instance {t}: negative gap {gap}")
        if t % 4 == 0:
            homothetic += 1
            if gap != 0:
                res.fail(f"instance {t}: homothetic pair with gap {gap}")
        res.checked += 1
    res.details["homothetic"] = homothetic
    return res


def monotonicity_ext(seed=0, count=100):
    res = LawResult("monotonicity-ext")
    rng = gen.rng_for(seed, "mono")
    equal_cases = 0
    for t in range(count):
        n = 2 + t % 2
        if t % 2:
            rest = tuple(gen.random_polytope(rng, n, max_vertices=2) for _ in range(n - 1))
        else:
            rest = gen.random_tuple(rng, n, n - 1, max_vertices=4)
        K = gen.random_polytope(rng, n, max_vertices=4)
        extra = [gen.random_point(rng, n) for _ in range(rng.randint(0, 2))]
        if t % 3 == 0:
            # grow K only in directions that are not extreme for the tuple
            extra = [v for v in extra if all(dot(v, w) <= K.h(w) for w in extreme_rays(rest, n))]
        L = Polytope(list(K.vertices) + extra, n)
        same = mixed_volume((K,) + rest) == mixed_volume((L,) + rest)
        eq = support_equal_on_ext(K, L, rest)
        if same != eq:
            res.fail(f"instance {t}: V equal {same}, h equal on ext {eq}")
        equal_cases += same
        res.checked += 1
    res.details["equal_cases"] = equal_cases
    return res


# ---------------------------------------------------------------------------
# worked examples


def _e(n, i, c=1):
    return tuple(c if j == i else 0 for j in range(n))


def worked_examples():
    """The three worked families in R^2 with their measures."""
    eps = EpsScalar.eps
    e = EpsScalar.eps(1)
    simple = PolytopeFamily([(0, 0), (0, 1), (1, 1 + e)], 2)
    prune = PolytopeFamily([(0, -1), (0, 0), (-e, -eps(2))], 2)
    double = PolytopeFamily([(0, -1), (0, 0), (-e, -e), (-eps(2), -eps(3))], 2)
    return {
        "simpleWitness": simple,
        "prune": prune,
        "double": double,
    }


def _check_example(res, name, fam, u, prunes, witness, via):
    mu = GeneratingMeasure((), (fam,))
    if not ts_nontrivial(mu, u):
        res.fail(f"{name}: touching space should be nontrivial")
    trace = prune_star_witness(mu, u)
    if prunes is not None and trace.effective_prunes != prunes:
        res.fail(f"{name}: {trace.effective_prunes} effective prunes, expected {prunes}")
    if trace.witness != witness:
        res.fail(f"{name}: witness {trace.witness.vertices}")
    sm = supp_membership([mu], u)
    if not sm["member"] or sm["via"] != via:
        res.fail(f"{name}: membership {sm['member']} via {sm['via']}")
    cert = certify_extreme([mu], u)
    if cert.verdict != Verdict.EXTREME:
        res.fail(f"{name}: verdict {cert.verdict.value}")
    res.checked += 1
    return trace


def prune_examples(seed=0, count=None):
    res = LawResult("prune-examples")
    ex = worked_examples()
    u = (0, 1)
    seg = Polytope([(0, 0), (-1, 0)], 2)

    _check_example(res, "simpleWitness", ex["simpleWitness"], u, None, Polytope([(0, 0), (1, 0)], 2), "exact atom")

    fam = ex["prune"]
    _check_example(res, "prune", fam, u, 1, seg, "branch limit")
    for l in range(1, 30):
        body = fam.at(Fraction(1, l))
        if (0, 1) in _positive_atoms((body,), 2):
            res.fail(f"prune: C(1/{l}) has e2 in its support")
    if (0, 1) in _positive_atoms((fam.limit(),), 2):
        res.fail("prune: limit segment has e2 in its support")
    loc = local_measure_equality_check(fam, u)
    if not loc["ok"] or loc["lambda_order"] != 1:
        res.fail(f"prune: local check {loc['ok']} with order {loc['lambda_order']}")
    if not sticky_check(fam, u):
        res.fail("prune: family not sticky")

    fam = ex["double"]
    trace = _check_example(res, "double", fam, u, 2, seg, "branch limit")
    from .pruning import prune_step

    F = fam
    for step in trace.steps:
        if step.changed and not sticky_check(F, u):
            res.fail(f"double: not sticky before step {step.I}")
        F, _ = prune_step(F, u)
    if len(trace.witness.vertices) < 2:
        res.fail("double: degenerate witness")
    return res


LAWS = {
    "suppchar-poly": suppchar_poly,
    "suppint": suppint,
    "reduction": reduction,
    "critindep": critindep,
    "tc3": tc3,
    "matau": matau,
    "afi-nonneg": afi_nonneg,
    "monotonicity-ext": monotonicity_ext,
    "prune-examples": prune_examples,
    # supplementary suites
    "oracle": oracle,
    "switching": switching_law,
    "tc4": tc4,
    "tc5": tc5,
}


def run_law(name, seed=0, count=None):
    fn = LAWS[name]
    return fn(seed=seed) if count is None else fn(seed=seed, count=count)
