"""Acceptance criteria 1-10; each test records one pass/fail line."""

import time
from fractions import Fraction

from mixedcone import laws
from mixedcone.mixedvol import mixed_area_measure
from mixedcone.polyoid import GeneratingMeasure, Verdict, certify_extreme, supp_membership, ts_nontrivial
from mixedcone.polytope import Polytope
from mixedcone.pruning import local_measure_equality_check, prune_star_witness, prune_step, sticky_check

RESULTS = {}
E2 = (0, 1)
SEGMENT = Polytope([(0, 0), (-1, 0)])


def record(k, ok, detail):
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    return ok


def summary(*results):
    return "; ".join(f"{r.name} {r.checked} checked, {len(r.failures)} failed" for r in results)


def test_criterion_01_polytope_support_characterization():
    t = time.perf_counter()
    r = laws.suppchar_poly(seed=0, count=200)
    dt = time.perf_counter() - t
    ok = r.passed and r.checked >= 200 and dt < 60
    assert record(1, ok, f"{summary(r)}; {dt:.1f}s"), r.failures


def test_criterion_02_oracle_equivalence_and_duality():
    r = laws.oracle(seed=0, count=200)
    assert record(2, r.passed and r.checked >= 200, summary(r)), r.failures


def test_criterion_03_reduction_formulas():
    r = laws.reduction(seed=0, count=100)
    ok = r.passed and r.checked >= 100 and r.details["degenerate"] > 0
    assert record(3, ok, f"{summary(r)}; degenerate {r.details['degenerate']}"), r.failures


def test_criterion_04_criticality():
    c = laws.critindep(seed=0, count=200)
    s = laws.switching_law(seed=0, count=500)
    ok = (
        c.passed
        and s.passed
        and c.details["reduction"] >= 200
        and c.details["additivity"] >= 200
        and s.checked >= 500
    )
    detail = (
        f"exhaustive {c.details['exhaustive']}, reduction {c.details['reduction']}, "
        f"additivity {c.details['additivity']}, switching {s.checked}; "
        f"{len(c.failures) + len(s.failures)} failed"
    )
    assert record(4, ok, detail), c.failures + s.failures


def test_criterion_05_cusp_touching():
    a = laws.tc4(seed=0, count=200, directions=5)
    b = laws.tc3(seed=0, count=100)
    c = laws.tc5(seed=0, count=100)
    ok = a.passed and b.passed and c.passed and a.checked >= 1000 and b.checked >= 100 and c.checked >= 100
    assert record(5, ok, summary(a, b, c)), a.failures + b.failures + c.failures


def _family(name):
    return laws.worked_examples()[name]


def test_criterion_06_simple_witness():
    t = time.perf_counter()
    mu = GeneratingMeasure((), (_family("simpleWitness"),))
    nontrivial = ts_nontrivial(mu, E2)
    sm = supp_membership([mu], E2)
    limit_atoms = {w for w, r in mixed_area_measure((_family("simpleWitness").limit(),), 2).atoms if r > 0}
    verdict = certify_extreme([mu], E2).verdict
    dt = time.perf_counter() - t
    ok = (
        nontrivial
        and sm["member"]
        and sm["via"] == "exact atom"
        and E2 in limit_atoms
        and verdict == Verdict.EXTREME
        and dt < 1
    )
    assert record(6, ok, f"ts_nontrivial={nontrivial}, IN via {sm['via']}, {verdict.value}; {dt:.3f}s")


def test_criterion_07_prune_example():
    t = time.perf_counter()
    F = _family("prune")
    mu = GeneratingMeasure((), (F,))
    own = [F.at(Fraction(1, l)) for l in range(1, 41)] + [F.limit()]
    excluded = all(E2 not in {w for w, r in mixed_area_measure((P,), 2).atoms if r > 0} for P in own)
    sm = supp_membership([mu], E2)
    trace = prune_star_witness(F, E2)
    loc = local_measure_equality_check(F, E2)
    dt = time.perf_counter() - t
    ok = (
        excluded
        and sm["member"]
        and sm["via"] == "branch limit"
        and trace.witness == SEGMENT
        and trace.effective_prunes == 1
        and loc["ok"]
        and loc["lambda_order"] == 1
        and dt < 1
    )
    detail = (
        f"bodies exclude e2={excluded}, IN via {sm['via']}, prunes {trace.effective_prunes}, "
        f"witness {[list(map(str, v)) for v in trace.witness.vertices]}, lambda=eps^{loc['lambda_order']}; {dt:.3f}s"
    )
    assert record(7, ok, detail)


def test_criterion_08_double_pruning():
    t = time.perf_counter()
    F = _family("double")
    trace = prune_star_witness(F, E2)
    stages = [F]
    G = F
    for step in trace.steps:
        if step.changed:
            G, _ = prune_step(G, E2)
            stages.append(G)
    sticky = all(sticky_check(S, E2) for S in stages)
    W = trace.witness
    dt = time.perf_counter() - t
    ok = trace.effective_prunes == 2 and W.dim == 1 and len(W.vertices) == 2 and sticky and dt < 1
    assert record(8, ok, f"prunes {trace.effective_prunes}, witness dim {W.dim}, sticky at {len(stages)} stages={sticky}; {dt:.3f}s")


def test_criterion_09_discrete_polyoid_support():
    r = laws.suppint(seed=0, count=100)
    ok = r.passed and r.checked >= 100
    assert record(9, ok, f"{summary(r)}; {r.details['representatives']} fan representatives"), r.failures


def test_criterion_10_afi_and_monotonicity():
    a = laws.afi_nonneg(seed=0, count=500)
    m = laws.monotonicity_ext(seed=0, count=100)
    ok = a.passed and m.passed and a.checked >= 500 and m.checked >= 100 and a.details["homothetic"] > 0
    detail = f"{summary(a, m)}; homothetic {a.details['homothetic']}, equality cases {m.details['equal_cases']}"
    assert record(10, ok, detail), a.failures + m.failures
