"""Seeded random instances for the law suites."""

import random
from itertools import product

from .exact import Subspace
from .polytope import Polytope


def rng_for(seed, label=""):
    return random.Random(f"{seed}:{label}")


def random_point(rng, n, lo=-2, hi=2):
    return tuple(rng.randint(lo, hi) for _ in range(n))


def random_polytope(rng, n, max_vertices=6, lo=-2, hi=2, min_vertices=1):
    k = rng.randint(min_vertices, max_vertices)
    return Polytope([random_point(rng, n, lo, hi) for _ in range(k)], n)


def random_tuple(rng, n, size, max_vertices=6):
    return tuple(random_polytope(rng, n, max_vertices) for _ in range(size))


def random_direction(rng, n, lo=-2, hi=2):
    while True:
        u = random_point(rng, n, lo, hi)
        if any(u):
            return u


def random_subspace(rng, n, dim, ambient=None, lo=-2, hi=2):
    """Random subspace of exact dimension ``dim`` inside ``ambient`` (default R^n)."""
    base = ambient.basis if ambient is not None else [
        tuple(1 if i == j else 0 for i in range(n)) for j in range(n)
    ]
    if dim > len(base):
        raise ValueError("requested dimension exceeds the ambient subspace")
    while True:
        vecs = []
        for _ in range(dim):
            c = [rng.randint(lo, hi) for _ in base]
            vecs.append(tuple(sum(ci * b[i] for ci, b in zip(c, base)) for i in range(n)))
        S = Subspace(vecs, n)
        if S.dim == dim:
            return S


def random_point_in(rng, S, lo=-2, hi=2):
    c = [rng.randint(lo, hi) for _ in S.basis]
    return tuple(sum(ci * b[i] for ci, b in zip(c, S.basis)) for i in range(S.n))


def random_polytope_in(rng, S, max_vertices=5, translate=True):
    """Random polytope parallel to ``S`` (optionally translated off it)."""
    t = random_point(rng, S.n) if translate else (0,) * S.n
    pts = []
    for _ in range(rng.randint(1, max_vertices)):
        p = random_point_in(rng, S) if S.dim else (0,) * S.n
        pts.append(tuple(a + b for a, b in zip(p, t)))
    return Polytope(pts, S.n)


def ternary_vectors(n):
    return [v for v in product((-1, 0, 1), repeat=n) if any(v)]
