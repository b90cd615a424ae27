"""JSON documents for exact values, polytopes and measures."""

from .exact import EpsScalar, Subspace, format_rational, to_rational
from .polytope import Polytope, PolytopeFamily

__all__ = [
    "ParseError",
    "load_scalar",
    "dump_scalar",
    "load_vector",
    "load_polytope",
    "dump_polytope",
    "load_family",
    "dump_family",
    "load_measure",
    "dump_measure",
    "load_subspace",
    "dump_subspace",
    "parse_direction",
]


class ParseError(ValueError):
    pass


def load_scalar(x):
    if isinstance(x, list):
        s = EpsScalar([load_scalar(c) for c in x])
        return s.constant() if s.is_constant() else s
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        try:
            return to_rational(x)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {x!r}") from exc
    raise ParseError(f"bad scalar {x!r}")


def dump_scalar(x):
    if isinstance(x, EpsScalar):
        return [format_rational(c) for c in x.c] or ["0"]
    return format_rational(x)


def load_vector(v):
    if not isinstance(v, list):
        raise ParseError(f"expected a coordinate list, got {v!r}")
    return tuple(load_scalar(x) for x in v)


def _points(doc):
    if not isinstance(doc, dict) or "vertices" not in doc:
        raise ParseError("polytope documents need 'vertices'")
    pts = [load_vector(v) for v in doc["vertices"]]
    if not pts:
        raise ParseError("empty vertex list")
    n = doc.get("dim", len(pts[0]))
    if any(len(p) != n for p in pts):
        raise ParseError("vertex of the wrong dimension")
    return pts, n


def load_polytope(doc):
    pts, n = _points(doc)
    return Polytope(pts, n)


def dump_polytope(P):
    return {"dim": P.n, "vertices": [[dump_scalar(x) for x in v] for v in P.vertices]}


def load_family(doc):
    pts, n = _points(doc)
    return PolytopeFamily(pts, n)


def dump_family(F):
    return {"dim": F.n, "vertices": [[dump_scalar(x) for x in v] for v in F.trajectories]}


def load_measure(doc):
    """Measure document, or a bare polytope (a single unit atom)."""
    from .polyoid import FamilyAtom, GeneratingMeasure

    if isinstance(doc, dict) and "vertices" in doc:
        return GeneratingMeasure.of(load_polytope(doc))
    if not isinstance(doc, dict):
        raise ParseError("measure documents are objects")
    atoms = [(load_scalar(a["weight"]), load_polytope(a["body"])) for a in doc.get("atoms", [])]
    fams = [FamilyAtom(load_family(f["family"]), f.get("schedule", "geometric")) for f in doc.get("families", [])]
    if not atoms and not fams:
        raise ParseError("a measure needs at least one atom")
    return GeneratingMeasure(tuple(atoms), tuple(fams))


def dump_measure(mu):
    return {
        "atoms": [{"weight": format_rational(w), "body": dump_polytope(P)} for w, P in mu.atoms],
        "families": [{"family": dump_family(f.family), "schedule": f.schedule} for f in mu.families],
    }


def load_subspace(doc, n):
    vecs = [load_vector(v) for v in doc]
    if any(len(v) != n for v in vecs):
        raise ParseError("spanning vector of the wrong dimension")
    return Subspace(vecs, n)


def dump_subspace(S):
    return [[format_rational(x) for x in b] for b in S.canonical_basis()]


def parse_direction(text):
    try:
        return tuple(to_rational(x) for x in text.split(","))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ParseError(f"bad direction {text!r}") from exc
