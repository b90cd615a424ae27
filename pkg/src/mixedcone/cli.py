"""Command-line entry point ``mixedcone``.

Exit codes: 0 success, 1 domain error (report names the error code),
2 input or I/O problem.
"""

import argparse
import json
import sys

from . import serialize as ser
from .criticality import classify, independent_selection, switching
from .errors import MixedConeError
from .exact import format_rational
from .laws import LAWS, run_law
from .mixedvol import afi_gap, mixed_area_measure, mixed_volume, reduction_check
from .polyoid import GeneratingMeasure, certify_extreme, supp_membership
from .pruning import RESCALE_NOTE, prune_star_witness, prune_step
from .touching import cusp, touching_space_polytope

COMMANDS = ("mv", "sam", "ext", "supp", "ts", "cusp", "crit", "switch", "prune", "witness", "afi", "reduce", "check")


class InputError(Exception):
    pass


def _bodies(doc):
    if isinstance(doc, dict) and "vertices" in doc:
        return [ser.load_polytope(doc)], doc.get("dim")
    if isinstance(doc, list):
        items, dim = doc, None
    elif isinstance(doc, dict) and "bodies" in doc:
        items, dim = doc["bodies"], doc.get("dim")
    else:
        raise InputError("expected a polytope, a list of polytopes or {'bodies': [...]}")
    return [ser.load_polytope(b) for b in items], dim


def _dim(bodies, dim, extra=0):
    if dim is not None:
        return dim
    if not bodies:
        raise InputError("an empty tuple needs an explicit 'dim'")
    return bodies[0].n + extra


def _need_u(args):
    if args.u is None:
        raise InputError("this command needs --u")
    return ser.parse_direction(args.u)


def _body(doc):
    if isinstance(doc, dict) and "body" in doc:
        return ser.load_polytope(doc["body"])
    return ser.load_polytope(doc)


def _polyoids(doc):
    items = doc["polyoids"] if isinstance(doc, dict) and "polyoids" in doc else doc
    if not isinstance(items, list):
        raise InputError("expected {'polyoids': [...]}")
    return [ser.load_measure(m) for m in items]


def _subspaces(items, n):
    return [ser.load_subspace(s, n) for s in items]


def _family_or_measure(doc):
    if "measure" in doc:
        return ser.load_measure(doc["measure"])
    if "family" in doc:
        return ser.load_family(doc["family"])
    return ser.load_family(doc)


def _step_json(s):
    return {"I": list(s.I), "i0": s.i0, "m": s.m, "changed": s.changed}


def cmd_mv(doc, args):
    bodies, _ = _bodies(doc)
    return {"value": format_rational(mixed_volume(bodies))}


def cmd_sam(doc, args):
    bodies, dim = _bodies(doc)
    n = _dim(bodies, dim)
    return mixed_area_measure(bodies, n).to_json()


def cmd_ext(doc, args):
    return certify_extreme(_polyoids(doc), _need_u(args)).to_json()


def cmd_supp(doc, args):
    out = supp_membership(_polyoids(doc), _need_u(args))
    return {"member": "IN" if out["member"] else "NOT_IN", "via": out["via"], "support": out["support"].to_json()}


def cmd_ts(doc, args):
    P = _body(doc)
    N, _, TS = touching_space_polytope(P, _need_u(args))
    return {
        "normal_cone": {
            "generators": [[format_rational(x) for x in g] for g in N.generators],
            "lineality": ser.dump_subspace(N.lineality),
        },
        "touching_space": ser.dump_subspace(TS),
        "dim": TS.dim,
    }


def cmd_cusp(doc, args):
    P = _body(doc)
    c_sq = doc.get("c_sq") if isinstance(doc, dict) else None
    rep = cusp(P, _need_u(args), c_sq)
    out = rep.to_json()
    if c_sq is not None:
        out["has_cusp"] = rep.has_cusp(c_sq)
    return out


def cmd_crit(doc, args):
    n = doc["dim"]
    raw = doc["subspaces"]
    spaces = _subspaces(raw, n)
    out = classify(spaces).to_json()
    sel = independent_selection([[(0,) * n] + [ser.load_vector(v) for v in s] for s in raw])
    out["selection"] = None if sel is None else [
        [[format_rational(x) for x in p] for p in pair] for pair in sel
    ]
    return out


def cmd_switch(doc, args):
    n = doc["dim"]
    res = switching(_subspaces(doc["T"], n), _subspaces(doc["R"], n), _need_u(args))
    return {"I": list(res.I), "J": list(res.J), "E": ser.dump_subspace(res.E)}


def cmd_prune(doc, args):
    F = _family_or_measure(doc)
    if isinstance(F, GeneratingMeasure):
        raise InputError("prune takes a family")
    G, step = prune_step(F, _need_u(args))
    return {**_step_json(step), "family": ser.dump_family(G), "note": RESCALE_NOTE}


def cmd_witness(doc, args):
    trace = prune_star_witness(_family_or_measure(doc), _need_u(args))
    return {
        "steps": [_step_json(s) for s in trace.steps],
        "effective_prunes": trace.effective_prunes,
        "fixpoint": ser.dump_family(trace.fixpoint),
        "witness": ser.dump_polytope(trace.witness),
        "note": RESCALE_NOTE,
    }


def cmd_afi(doc, args):
    K = ser.load_polytope(doc["K"])
    L = ser.load_polytope(doc["L"])
    rest = [ser.load_polytope(b) for b in doc.get("bodies", [])]
    lhs, rhs, gap = afi_gap(K, L, rest)
    return {"lhs": format_rational(lhs), "rhs": format_rational(rhs), "gap": format_rational(gap)}


def cmd_reduce(doc, args):
    bodies = [ser.load_polytope(b) for b in doc["bodies"]]
    n = doc.get("dim", bodies[0].n if bodies else None)
    if n is None:
        raise InputError("reduce needs bodies or 'dim'")
    E = ser.load_subspace(doc.get("E", []), n)
    rep = reduction_check(bodies, doc["k"], E)
    out = {"form": rep["form"], "n": rep["n"], "k": rep["k"], "holds": rep["holds"]}
    if rep["form"] == "volume":
        out.update(lhs=format_rational(rep["lhs"]), rhs=format_rational(rep["rhs"]))
    else:
        for side in ("lhs", "rhs"):
            out[side] = [{"w": list(w), "mass_sq": format_rational(v)} for w, v in sorted(rep[side].items())]
    return out


HANDLERS = {
    "mv": cmd_mv,
    "sam": cmd_sam,
    "ext": cmd_ext,
    "supp": cmd_supp,
    "ts": cmd_ts,
    "cusp": cmd_cusp,
    "crit": cmd_crit,
    "switch": cmd_switch,
    "prune": cmd_prune,
    "witness": cmd_witness,
    "afi": cmd_afi,
    "reduce": cmd_reduce,
}


def build_parser():
    p = argparse.ArgumentParser(prog="mixedcone", description="Exact mixed volumes, area measures and supports.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("law_name", nargs="?", help="law for the check command")
    p.add_argument("--input", help="JSON input document")
    p.add_argument("--u", help="direction as comma-separated rationals, e.g. '0,1' or '1/2,-1'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--law", help="law for the check command")
    p.add_argument("--count", type=int, help="override the number of generated instances")
    p.add_argument("--out", help="write the report here instead of stdout")
    return p


def _emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    """Run one job; returns ``(exit_code, report)``."""
    return _run(build_parser().parse_args(argv))


def _run(args):
    try:
        if args.command == "check":
            name = args.law or args.law_name
            if name not in LAWS:
                raise InputError(f"unknown law {name!r}; choose from {', '.join(LAWS)}")
            res = run_law(name, args.seed, args.count)
            return (0 if res.passed else 1), {"command": "check", "seed": args.seed, **res.to_json()}
        if not args.input:
            raise InputError("this command needs --input")
        with open(args.input) as fh:
            doc = json.load(fh)
        report = HANDLERS[args.command](doc, args)
        return 0, {"command": args.command, **report}
    except MixedConeError as exc:
        return 1, {"command": args.command, "error": exc.code, "message": str(exc)}
    except (InputError, ser.ParseError, OSError, ValueError, KeyError, TypeError) as exc:
        return 2, {"command": args.command, "error": "InputError", "message": str(exc)}


def main(argv=None):
    args = build_parser().parse_args(argv)
    code, report = _run(args)
    try:
        _emit(report, args.out)
    except OSError as exc:
        sys.stderr.write(f"mixedcone: cannot write report: {exc}\n")
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
