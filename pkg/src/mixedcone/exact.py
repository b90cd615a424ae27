"""Exact scalars and exact linear algebra.

Two scalar fields are supported throughout the package:

* rationals, stored as ``int`` when integral and as :class:`fractions.Fraction`
  otherwise (ints keep the common desk-scale case fast);
* :class:`EpsScalar`, polynomials in an infinitesimal ``eps`` ordered by their
  sign as ``eps -> 0+``.

All elimination routines are fraction-free (Bareiss), so they only ever divide
exactly and run unchanged over ``Q[eps]``.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd, inf

from .errors import DegreeOverflow, DivergentFamily, InexactDivision, ZeroDirection

__all__ = [
    "EpsScalar",
    "Subspace",
    "to_rational",
    "format_rational",
    "qnorm",
    "is_eps",
    "sign",
    "eps_analyze",
    "dot",
    "vsub",
    "vadd",
    "vscale",
    "det",
    "rank",
    "rank_and_kernel",
    "independent_subset",
    "cross",
    "primitive",
    "solve",
    "fm_feasible",
]


# ---------------------------------------------------------------------------
# rationals


def qnorm(x):
    """Collapse integral Fractions to ``int``."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def to_rational(x):
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return qnorm(x)
    if isinstance(x, str):
        return qnorm(Fraction(x.strip()))
    raise TypeError(f"cannot read {x!r} as an exact rational")


def format_rational(x):
    x = qnorm(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def _qdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if r == 0:
            return q
    return qnorm(Fraction(a) / b)


# ---------------------------------------------------------------------------
# infinitesimal polynomials


class EpsScalar:
    """Polynomial ``c0 + c1*eps + ... + cd*eps**d`` with rational coefficients.

    Ordered by the sign of the lowest nonzero coefficient, i.e. by the sign
    the polynomial takes for all sufficiently small ``eps > 0``.
    """

    __slots__ = ("c",)
    degree_cap = 32

    def __init__(self, coeffs=()):
        c = [to_rational(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        if len(c) - 1 > EpsScalar.degree_cap:
            raise DegreeOverflow(f"degree {len(c) - 1} exceeds cap {EpsScalar.degree_cap}")
        self.c = tuple(c)

    @classmethod
    def _raw(cls, c):
        while c and c[-1] == 0:
            c.pop()
        if len(c) - 1 > cls.degree_cap:
            raise DegreeOverflow(f"degree {len(c) - 1} exceeds cap {cls.degree_cap}")
        obj = object.__new__(cls)
        obj.c = tuple(c)
        return obj

    @classmethod
    def eps(cls, power=1):
        return cls._raw([0] * power + [1])

    @classmethod
    def lift(cls, x):
        if isinstance(x, EpsScalar):
            return x
        return cls._raw([to_rational(x)])

    # -- structure ---------------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    @property
    def order(self):
        for i, x in enumerate(self.c):
            if x != 0:
                return i
        return inf

    def is_constant(self):
        return len(self.c) <= 1

    def constant(self):
        return self.c[0] if self.c else 0

    def sign(self):
        for x in self.c:
            if x != 0:
                return 1 if x > 0 else -1
        return 0

    def lowest(self):
        for x in self.c:
            if x != 0:
                return x
        return 0

    def limit(self):
        return self.c[0] if self.c else 0

    def shift(self, k):
        """Multiply by ``eps**k``; negative ``k`` needs vanishing order >= -k."""
        if not self.c:
            return self
        if k >= 0:
            return EpsScalar._raw([0] * k + list(self.c))
        if self.order < -k:
            raise DivergentFamily(f"rescaling by eps^{k} diverges (order {self.order})")
        return EpsScalar._raw(list(self.c[-k:]))

    def evaluate(self, x):
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return qnorm(Fraction(acc)) if not isinstance(acc, int) else acc

    __call__ = evaluate

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, EpsScalar):
            if not self.c:
                return EpsScalar._raw([other])
            c = list(self.c)
            c[0] = qnorm(c[0] + other)
            return EpsScalar._raw(c)
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        c = list(a)
        for i, x in enumerate(b):
            c[i] = qnorm(c[i] + x)
        return EpsScalar._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return EpsScalar._raw([-x for x in self.c])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, EpsScalar):
            if other == 0:
                return EpsScalar._raw([])
            return EpsScalar._raw([qnorm(x * other) for x in self.c])
        a, b = self.c, other.c
        if not a or not b:
            return EpsScalar._raw([])
        c = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                c[i + j] += x * y
        return EpsScalar._raw([qnorm(x) for x in c])

    __rmul__ = __mul__

    def __pow__(self, k):
        out = EpsScalar._raw([1])
        for _ in range(k):
            out = out * self
        return out

    def __truediv__(self, other):
        if not isinstance(other, EpsScalar):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return EpsScalar._raw([qnorm(Fraction(x) / other) for x in self.c])
        return self.exact_div(other)

    def __rtruediv__(self, other):
        return EpsScalar.lift(other).exact_div(self)

    def exact_div(self, other):
        """Exact quotient; raises :class:`InexactDivision` if not a polynomial."""
        other = EpsScalar.lift(other)
        if not other.c:
            raise ZeroDivisionError("division by the zero polynomial")
        if not self.c:
            return self
        ob, oa = other.order, self.order
        if ob > oa:
            raise InexactDivision("divisor vanishes to higher order than dividend")
        num = list(self.c[ob:])
        den = other.c[ob:]
        if len(den) == 1:
            d = den[0]
            return EpsScalar._raw([_qdiv(x, d) for x in num])
        if len(num) < len(den):
            raise InexactDivision("degree of divisor exceeds dividend")
        q = [0] * (len(num) - len(den) + 1)
        lead = den[-1]
        for i in range(len(q) - 1, -1, -1):
            coef = _qdiv(num[i + len(den) - 1], lead)
            q[i] = coef
            if coef != 0:
                for j, y in enumerate(den):
                    num[i + j] = qnorm(num[i + j] - coef * y)
        if any(x != 0 for x in num):
            raise InexactDivision("nonzero remainder")
        return EpsScalar._raw(q)

    # -- order -------------------------------------------------------------
    def _cmp(self, other):
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, EpsScalar):
            return self.c == other.c
        if isinstance(other, (int, Fraction)):
            if not self.c:
                return other == 0
            return len(self.c) == 1 and self.c[0] == other
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        if len(self.c) <= 1:
            return hash(self.c[0] if self.c else 0)
        return hash(("eps",) + self.c)

    def __bool__(self):
        return bool(self.c)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        if not self.c:
            return "EpsScalar(0)"
        terms = []
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            s = format_rational(x)
            terms.append(s if i == 0 else f"{s}*eps" + (f"^{i}" if i > 1 else ""))
        return "EpsScalar(" + " + ".join(terms) + ")"


def is_eps(x):
    return isinstance(x, EpsScalar)


def sign(x):
    if isinstance(x, EpsScalar):
        return x.sign()
    return (x > 0) - (x < 0)


def eps_analyze(s):
    """Return ``(sign at 0+, vanishing order, limit at 0)`` of a scalar."""
    if not isinstance(s, EpsScalar):
        s = EpsScalar.lift(s)
    return s.sign(), s.order, s.limit()


def _div(a, b):
    if isinstance(a, EpsScalar) or isinstance(b, EpsScalar):
        return EpsScalar.lift(a).exact_div(b)
    return _qdiv(a, b)


# ---------------------------------------------------------------------------
# vectors


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vscale(c, v):
    return tuple(c * a for a in v)


def _has_eps(rows):
    for r in rows:
        for x in r:
            if isinstance(x, EpsScalar):
                return True
    return False


def _integral(rows):
    """Scale each rational row by a positive factor so all entries are ints."""
    out = []
    for r in rows:
        den = 1
        for x in r:
            if type(x) is Fraction:
                d = x.denominator
                den = den * d // gcd(den, d)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def _bareiss(rows, ncols):
    """Fraction-free row echelon form.

    Returns ``(rank, pivot_columns, echelon_rows, row_order, swaps)`` where
    ``row_order[i]`` is the input row that ended up in position ``i``.
    """
    A = [list(r) for r in rows]
    m = len(A)
    order = list(range(m))
    prev = 1
    r = 0
    swaps = 0
    pivots = []
    for col in range(ncols):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if A[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            order[r], order[piv] = order[piv], order[r]
            swaps += 1
        p = A[r][col]
        Ar = A[r]
        for i in range(r + 1, m):
            Ai = A[i]
            a = Ai[col]
            for j in range(col + 1, ncols):
                Ai[j] = _div(p * Ai[j] - a * Ar[j], prev)
            Ai[col] = 0
        prev = p
        pivots.append(col)
        r += 1
    return r, pivots, A, order, swaps


def _prepare(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return rows
    if _has_eps(rows):
        return rows
    return _integral(rows)


def det(M):
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    if n == 3:
        a, b, c = M
        return (
            a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0])
        )
    r, _, A, _, swaps = _bareiss([list(x) for x in M], n)
    if r < n:
        return 0
    d = A[n - 1][n - 1]
    return -d if swaps % 2 else d


def rank(rows, ncols=None):
    rows = [r for r in rows]
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return _bareiss(_prepare(rows), ncols)[0]


def independent_subset(vectors):
    """Indices of a maximal linearly independent subfamily, chosen greedily in order."""
    chosen = []
    basis = []
    for i, v in enumerate(vectors):
        if all(x == 0 for x in v):
            continue
        if rank(basis + [v]) > len(basis):
            basis.append(v)
            chosen.append(i)
    return chosen


def _normalize_direction(v):
    if any(isinstance(x, EpsScalar) for x in v):
        return normalize_eps_vector(v)
    return primitive(v)


def rank_and_kernel(M, ncols=None):
    """Rank of ``M`` and a basis of its kernel.

    Kernel vectors are primitive integer vectors over Q and content-normalized
    polynomial vectors over Q[eps].
    """
    M = [list(r) for r in M]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        basis = [tuple(1 if i == j else 0 for i in range(ncols)) for j in range(ncols)]
        return 0, Subspace(basis, ncols, trusted=True)
    r, pivots, A, _, _ = _bareiss(_prepare(M), ncols)
    E = A[:r]
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        dprod = 1
        for i, pc in enumerate(pivots):
            dprod = dprod * E[i][pc]
        x = [0] * ncols
        x[f] = dprod
        for i in range(r - 1, -1, -1):
            pc = pivots[i]
            acc = -E[i][f] * dprod
            for k in range(i + 1, r):
                acc = acc - E[i][pivots[k]] * x[pivots[k]]
            x[pc] = _div(acc, E[i][pc])
        basis.append(_normalize_direction(x))
    return r, Subspace(basis, ncols, trusted=True)


def cross(vectors, n):
    """Generalized cross product of ``n-1`` vectors in ``R^n`` (cofactor vector)."""
    if n == 1:
        return (1,)
    if n == 2:
        (a, b), = vectors
        return (b, -a)
    if n == 3:
        (a0, a1, a2), (b0, b1, b2) = vectors
        return (a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0)
    out = []
    for j in range(n):
        minor = [[row[k] for k in range(n) if k != j] for row in vectors]
        d = det(minor)
        out.append(d if j % 2 == 0 else -d)
    return tuple(out)


def primitive(v):
    """Positive multiple of a rational vector with coprime integer entries."""
    if all(x == 0 for x in v):
        raise ZeroDirection("zero vector has no direction")
    den = 1
    for x in v:
        if type(x) is Fraction:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def normalize_eps_vector(v):
    """Canonical positive multiple of a polynomial vector.

    Divides out the common power of eps and scales so that the lowest-order
    coefficient of the first component attaining the minimal order is +-1,
    keeping the direction (positive scaling only).
    """
    v = [EpsScalar.lift(x) for x in v]
    orders = [x.order for x in v]
    m = min(orders)
    if m == inf:
        raise ZeroDirection("zero vector has no direction")
    v = [x.shift(-m) if x.c else x for x in v]
    lead = next(x.constant() for x in v if x.constant() != 0)
    scale = abs(Fraction(lead))
    out = []
    for x in v:
        y = x / scale if scale != 1 else x
        out.append(y.constant() if y.is_constant() else y)
    return tuple(out)


def solve(A, b):
    """Solve the square nonsingular rational system ``A x = b`` exactly."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for col in range(n):
        piv = next(i for i in range(col, n) if M[i][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        p = M[col][col]
        M[col] = [x / p for x in M[col]]
        for i in range(n):
            if i != col and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[col])]
    return tuple(qnorm(M[i][n]) for i in range(n))


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Linear subspace of ``R^n`` given by a basis."""

    __slots__ = ("basis", "n", "_key")

    def __init__(self, vectors, n, trusted=False):
        vectors = [tuple(v) for v in vectors]
        if not trusted:
            idx = independent_subset(vectors)
            vectors = [vectors[i] for i in idx]
        self.basis = tuple(vectors)
        self.n = n
        self._key = None

    @classmethod
    def span(cls, vectors, n):
        return cls(vectors, n)

    @classmethod
    def zero(cls, n):
        return cls((), n, trusted=True)

    @classmethod
    def full(cls, n):
        return cls([tuple(1 if i == j else 0 for i in range(n)) for j in range(n)], n, trusted=True)

    @property
    def dim(self):
        return len(self.basis)

    def is_trivial(self):
        return not self.basis

    def contains(self, v):
        if all(x == 0 for x in v):
            return True
        return rank(list(self.basis) + [tuple(v)], self.n) == self.dim

    def contains_subspace(self, other):
        return all(self.contains(v) for v in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.dim == other.dim and self.contains_subspace(other)

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Canonical reduced echelon basis (rational subspaces only)."""
        if self._key is None:
            rows = [[Fraction(x) for x in v] for v in self.basis]
            pivots = []
            r = 0
            for col in range(self.n):
                piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
                if piv is None:
                    continue
                rows[r], rows[piv] = rows[piv], rows[r]
                p = rows[r][col]
                rows[r] = [x / p for x in rows[r]]
                for i in range(len(rows)):
                    if i != r and rows[i][col] != 0:
                        f = rows[i][col]
                        rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                pivots.append(col)
                r += 1
            self._key = (self.n, tuple(tuple(qnorm(x) for x in row) for row in rows[:r]))
        return self._key

    def canonical_basis(self):
        return [primitive(v) for v in self.key()[1]]

    def perp(self):
        if not self.basis:
            return Subspace.full(self.n)
        return rank_and_kernel(list(self.basis), self.n)[1]

    def __add__(self, other):
        return Subspace(list(self.basis) + list(other.basis), self.n)

    def intersect(self, other):
        return (self.perp() + other.perp()).perp()

    def projection_matrix(self):
        """Matrix of the orthogonal projection onto this (rational) subspace."""
        n = self.n
        if not self.basis:
            return [[0] * n for _ in range(n)]
        B = self.basis
        G = [[dot(a, b) for b in B] for a in B]
        cols = []
        for j in range(n):
            e = [1 if i == j else 0 for i in range(n)]
            coeffs = solve(G, [dot(b, e) for b in B])
            cols.append([qnorm(sum(c * b[i] for c, b in zip(coeffs, B))) for i in range(n)])
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def project(self, v):
        P = self.projection_matrix()
        return tuple(qnorm(sum(P[i][j] * v[j] for j in range(self.n))) for i in range(self.n))

    def coordinates(self, v):
        """Coefficients of ``v`` (assumed in the subspace) in this basis."""
        B = self.basis
        G = [[dot(a, b) for b in B] for a in B]
        return solve(G, [dot(b, v) for b in B])

    def gram_det(self):
        return det([[dot(a, b) for b in self.basis] for a in self.basis])

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, basis={list(self.basis)})"


# ---------------------------------------------------------------------------
# Fourier-Motzkin


def _fm_normalize(a, c, strict):
    vals = list(a) + [c]
    den = 1
    for x in vals:
        if type(x) is Fraction:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vals]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints[:-1]), ints[-1], strict


def fm_feasible(constraints, nvars):
    """Decide feasibility of a rational system by Fourier-Motzkin elimination.

    Each constraint is ``(coeffs, const, strict)`` meaning
    ``coeffs . x + const > 0`` if ``strict`` else ``>= 0``.
    """
    rows = set()
    for a, c, s in constraints:
        rows.add(_fm_normalize(a, c, bool(s)))
    for var in range(nvars):
        pos, neg, keep = [], [], set()
        for a, c, s in rows:
            x = a[var]
            if x > 0:
                pos.append((a, c, s))
            elif x < 0:
                neg.append((a, c, s))
            else:
                keep.add((a, c, s))
        for a1, c1, s1 in pos:
            p = a1[var]
            for a2, c2, s2 in neg:
                q = -a2[var]
                a = tuple(q * x + p * y for x, y in zip(a1, a2))
                keep.add(_fm_normalize(a, q * c1 + p * c2, s1 or s2))
        rows = set()
        for a, c, s in keep:
            if all(x == 0 for x in a):
                if c < 0 or (c == 0 and s):
                    return False
                continue
            rows.add((a, c, s))
        # drop non-strict rows dominated by an identical strict row
        strict_keys = {(a, c) for a, c, s in rows if s}
        rows = {(a, c, s) for a, c, s in rows if s or (a, c) not in strict_keys}
    return all(c > 0 or (c == 0 and not s) for a, c, s in rows)


def unit_fraction_roots(p, limit=10**6):
    """Positive integers ``l`` with ``p(1/l) = 0`` for a polynomial ``p``.

    ``l**d * p(1/l)`` has integer roots dividing its constant term, which is
    the (scaled) top coefficient of ``p``.
    """
    p = EpsScalar.lift(p)
    if not p.c:
        raise ValueError("the zero polynomial vanishes everywhere")
    den = 1
    for x in p.c:
        if type(x) is Fraction:
            den = den * x.denominator // gcd(den, x.denominator)
    q = [int(x * den) for x in reversed(p.c)]  # q(l) = sum q[i] l^i
    while q and q[0] == 0:
        q.pop(0)
    c0 = abs(q[0])
    if c0 > limit:
        cands = range(1, limit + 1)
    else:
        cands = [d for d in range(1, c0 + 1) if c0 % d == 0]
    out = []
    for l in cands:
        acc = 0
        for coef in reversed(q):
            acc = acc * l + coef
        if acc == 0:
            out.append(l)
    return out
