"""Semicritical, critical and supercritical tuples of subspaces.

User-facing index sets are 1-based throughout.
"""

from dataclasses import dataclass
from itertools import combinations

from .errors import DimensionMismatch, InternalError, PreconditionError, SizeError
from .exact import Subspace, dot, format_rational, rank, vsub
from .polytope import Polytope

__all__ = [
    "Classification",
    "SwitchingResult",
    "classify",
    "is_semicritical",
    "independent_selection",
    "switching",
    "as_subspace",
]

MAX_TUPLE = 12


def as_subspace(A, n=None):
    """Subspace, polytope or point list to its (linear) span of differences."""
    if isinstance(A, Subspace):
        return A
    if isinstance(A, Polytope):
        return A.pspan()
    pts = [tuple(p) for p in A]
    n = n if n is not None else len(pts[0])
    return Subspace([vsub(p, pts[0]) for p in pts[1:]], n)


@dataclass(frozen=True)
class Classification:
    semicritical: bool
    critical: bool
    supercritical: bool
    min_margin: object
    witness_subset: tuple

    def to_json(self):
        return {
            "semicritical": self.semicritical,
            "critical": self.critical,
            "supercritical": self.supercritical,
            "min_margin": self.min_margin if self.min_margin != float("inf") else None,
            "witness_subset": list(self.witness_subset),
        }


def _subsets(m):
    for r in range(1, m + 1):
        yield from combinations(range(m), r)


def classify(entries):
    """Classify a tuple by exhaustive enumeration of its nonempty subtuples.

    ``witness_subset`` is the first subtuple (size, then lexicographic order)
    attaining the smallest margin ``dim span - size``; it is empty for the
    empty tuple.
    """
    entries = [as_subspace(A) for A in entries]
    m = len(entries)
    if m > MAX_TUPLE:
        raise SizeError(f"tuples longer than {MAX_TUPLE} are not enumerated")
    if m == 0:
        return Classification(True, True, True, float("inf"), ())
    n = entries[0].n
    if any(A.n != n for A in entries):
        raise DimensionMismatch("subspaces in different ambient spaces")
    best, arg = None, None
    for S in _subsets(m):
        vecs = [b for i in S for b in entries[i].basis]
        margin = rank(vecs, n) - len(S) if vecs else -len(S)
        if best is None or margin < best:
            best, arg = margin, S
    return Classification(best >= 0, best >= 1, best >= 2, best, tuple(i + 1 for i in arg))


def is_semicritical(entries):
    return classify(entries).semicritical


def independent_selection(sets):
    """Pairs ``(x_i, y_i)`` from each set with linearly independent differences.

    Returns ``None`` when no such selection exists.
    """
    pts = []
    for A in sets:
        if isinstance(A, Polytope):
            pts.append(list(A.vertices))
        else:
            pts.append([tuple(p) for p in A])
    m = len(pts)
    if m == 0:
        return []
    n = len(pts[0][0])
    options = []
    for P in pts:
        base = P[0]
        opts = [(base, y) for y in P[1:]]
        options.append(opts)
    order = sorted(range(m), key=lambda i: len(options[i]))
    chosen = {}

    def dfs(pos, vecs):
        if pos == m:
            return True
        i = order[pos]
        for x, y in options[i]:
            d = vsub(y, x)
            if rank(vecs + [d], n) == len(vecs) + 1:
                chosen[i] = (x, y)
                if dfs(pos + 1, vecs + [d]):
                    return True
        return False

    if not dfs(0, []):
        return None
    return [chosen[i] for i in range(m)]


@dataclass(frozen=True)
class SwitchingResult:
    I: tuple
    J: tuple
    E: Subspace

    def to_json(self):
        return {"I": list(self.I), "J": list(self.J), "E": [[format_rational(x) for x in b] for b in self.E.canonical_basis()]}


def _mix(R, S, inR, idx):
    return [R[i] if i in inR else S[i] for i in idx]


def switching(T, R, u):
    """Index sets ``I <= J`` with ``R_I`` spanning ``|I|`` dimensions and
    ``R_J + T_{J^c}`` semicritical.
    """
    T = [as_subspace(A) for A in T]
    R = [as_subspace(A) for A in R]
    u = tuple(u)
    n = len(u)
    m = n - 1
    if n < 2:
        raise PreconditionError("dimension", "needs n >= 2")
    if len(T) != m or len(R) != m:
        raise PreconditionError("size", f"both tuples must have {m} entries")
    if all(x == 0 for x in u):
        raise PreconditionError("direction", "u must be nonzero")
    for A in T + R:
        if A.n != n or any(dot(b, u) != 0 for b in A.basis):
            raise PreconditionError("orthogonality", "all subspaces must lie in u^perp")
    if not is_semicritical(T):
        raise PreconditionError("semicritical", "T must be semicritical")
    if any(A.dim == 0 for A in R):
        raise PreconditionError("nontrivial", "every R_i must be nontrivial")
    S = [a + b for a, b in zip(T, R)]
    full = range(m)
    J = set()
    for i in full:
        if is_semicritical(_mix(R, S, J | {i}, full)):
            J.add(i)
    for i in full:
        if i not in J and is_semicritical(_mix(R, S, J | {i}, full)):
            raise InternalError("greedy J is not inclusion-maximal")
    I = None
    for cand in _subsets(m):
        if not classify(_mix(R, S, J, cand)).critical:
            I = set(cand)
            break
    if I is None or not I <= J:
        raise InternalError("switching construction failed")
    E = Subspace([b for i in sorted(I) for b in R[i].basis], n)
    if E.dim != len(I):
        raise InternalError("R_I does not span |I| dimensions")
    if not is_semicritical(_mix(R, T, J, full)):
        raise InternalError("R_J + T_{J^c} is not semicritical")
    return SwitchingResult(tuple(sorted(i + 1 for i in I)), tuple(sorted(i + 1 for i in J)), E)
