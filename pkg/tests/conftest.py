import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from centroid_lattice.polytope import Polytope, cube, ehrhart_simplex

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


S2 = ehrhart_simplex(2)
S3 = ehrhart_simplex(3)
# conv{+-(1,0), +-(0,1), +-(1,1)}
HEXAGON = Polytope(2, [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1), (-1, -1)])


def brute_points(body):
    """Lattice points of ``body`` by testing every point of its bounding box against the H-rep."""
    box = []
    for coords in zip(*body.vertices):
        box.append(range(math.floor(min(coords)), math.ceil(max(coords)) + 1))
    h = body.hrep
    return sorted(p for p in itertools.product(*box) if h.contains(p))


def brute_interior(body):
    h = body.hrep
    return [p for p in brute_points(body) if all(hs.value(p) < hs.offset for hs in h.halfspaces)]


@pytest.fixture
def s2():
    return S2


@pytest.fixture
def square():
    return cube(2)


# -- strategies ---------------------------------------------------------------

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def int_matrices(n, lo=-4, hi=4):
    return st.lists(
        st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: tuple(tuple(r) for r in rows))


@st.composite
def unimodular(draw, n):
    """Products of elementary shears and signed permutations."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(draw(st.integers(0, 4))):
        i, j = draw(st.sampled_from([(i, j) for i in range(n) for j in range(n) if i != j]))
        c = draw(st.integers(-2, 2))
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    perm = draw(st.permutations(range(n)))
    signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    return tuple(tuple(signs[k] * m[perm[k]][j] for j in range(n)) for k in range(n))


@st.composite
def lattice_polygons(draw, bound=5, min_points=3, max_points=8):
    """Hull of random integer points, retried until it is 2-dimensional."""
    pts = draw(
        st.lists(st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)), min_size=min_points, max_size=max_points, unique=True)
    )
    p0 = pts[0]
    ok = any(
        (b[0] - p0[0]) * (c[1] - p0[1]) - (b[1] - p0[1]) * (c[0] - p0[0]) != 0
        for b, c in itertools.combinations(pts[1:], 2)
    )
    from hypothesis import assume

    assume(ok)
    return Polytope.hull(pts, 2)


@st.composite
def full_polytopes(draw, dim, bound=4, max_points=8):
    pts = draw(
        st.lists(st.tuples(*[st.integers(-bound, bound)] * dim), min_size=dim + 1, max_size=max_points, unique=True)
    )
    p = Polytope.hull(pts, dim)
    from hypothesis import assume

    assume(p.is_full)
    return p


def frac(s):
    return Fraction(s)


def random_bary(rng, parts, max_den=60):
    """Random rational point of the standard simplex with ``parts`` coordinates."""
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(parts - 1))
    edges = [0] + cuts + [den]
    return tuple(Fraction(b - a, den) for a, b in zip(edges, edges[1:]))


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[n])
