from fractions import Fraction

from hypothesis import settings, strategies as st

from mixedcone.exact import EpsScalar
from mixedcone.polytope import Polytope

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def e(n, i, c=1):
    return tuple(c if j == i else 0 for j in range(n))


def square():
    return Polytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)


def seg(a, b):
    return Polytope([a, b], len(a))


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-2, max_value=2)


@st.composite
def eps_scalars(draw, max_degree=3):
    return EpsScalar(draw(st.lists(rationals, min_size=0, max_size=max_degree + 1)))


@st.composite
def points(draw, n):
    return tuple(draw(small_ints) for _ in range(n))


@st.composite
def polytopes(draw, n, max_vertices=5):
    pts = draw(st.lists(points(n), min_size=1, max_size=max_vertices))
    return Polytope(pts, n)


@st.composite
def directions(draw, n):
    v = draw(st.lists(small_ints, min_size=n, max_size=n).filter(any))
    return tuple(v)


@st.composite
def positive_rationals(draw):
    return draw(st.fractions(min_value=Fraction(1, 6), max_value=4, max_denominator=6))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if not mod or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
