import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from centroid_lattice.bounds import center, symmetric_bound
from centroid_lattice.lattice import (
    count,
    count_interior,
    enumerate_lattice_points,
    enumerate_reverse,
    lambda1,
    packing_check,
    unbounded_family,
)
from centroid_lattice.polytope import (
    Polytope,
    PreconditionError,
    centroid,
    cube,
    ehrhart_simplex,
    gauge,
    intersect,
    reflect,
)

from .conftest import S2, S3, brute_interior, brute_points, full_polytopes


def test_s2_counts():
    lat = enumerate_lattice_points(S2.polytope)
    assert lat.count == 10
    assert lat.interior_count == 1
    assert lat.interior_points == [(0, 0)]


def test_binomial_examples():
    assert count(S3.polytope) == 35
    assert count(ehrhart_simplex(2, 2).polytope) == 28
    assert count(ehrhart_simplex(2, 3).polytope) == math.comb(11, 2) == 55


def test_square_counts():
    assert count(cube(2)) == 9
    assert count_interior(cube(2)) == 1


def test_hrep_input_accepted():
    assert count(S2.hrep) == 10


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_scaled_simplex_matches_brute_force(d, m):
    s = ehrhart_simplex(d, m).polytope
    assert list(enumerate_lattice_points(s).points) == brute_points(s)
    assert count(s) == math.comb(d + m * (d + 1), d)


@given(st.one_of(full_polytopes(2), full_polytopes(3, bound=3, max_points=7)))
def test_scan_orders_agree(p):
    lat = enumerate_lattice_points(p)
    assert sorted(enumerate_reverse(p)) == list(lat.points) == brute_points(p)
    assert lat.interior_points == brute_interior(p)


@given(full_polytopes(2), st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=5))
def test_rational_bodies_match_brute_force(p, t):
    q = p.scaled(t).translate((Fraction(1, 3), Fraction(-1, 2)))
    assert list(enumerate_lattice_points(q).points) == brute_points(q)


def test_lambda1_examples():
    lam = lambda1(S2.polytope)
    assert lam.value == 1
    assert lam.witness == (1, 0)
    big = cube(2, 2)
    assert lambda1(big) == (Fraction(1, 2), (1, 0))
    for d in (2, 3):
        for m in (2, 3):
            assert lambda1(ehrhart_simplex(d, m).polytope).value == Fraction(1, m)


def test_lambda1_brute_force_s2():
    # minimum gauge over Z^2 intersect [-2,2]^2 minus the origin
    h = S2.hrep
    best = min(gauge(h, z) for z in itertools.product(range(-2, 3), repeat=2) if z != (0, 0))
    assert lambda1(S2.polytope).value == best == 1


@given(full_polytopes(2, bound=3, max_points=6))
def test_lambda1_certified(p):
    k = center(p)
    lam = lambda1(k)
    assert gauge(k.hrep, lam.witness) == lam.value
    # nothing nonzero strictly inside lambda_1 K
    inner = k.scaled(lam.value)
    for z in enumerate_lattice_points(inner).interior_points:
        assert z == (0, 0)
    # homogeneity
    assert lambda1(k.scaled(2)).value * 2 == lam.value


def test_packing_examples():
    pts = enumerate_lattice_points(S2.polytope).points
    assert packing_check(S2.polytope, pts)
    with pytest.raises(PreconditionError):
        packing_check(S2.polytope, [(0, 0), (0, 0)])
    sq = cube(2)
    sq_pts = enumerate_lattice_points(sq).points
    assert packing_check(sq, sq_pts)
    assert not packing_check(sq, sq_pts, scale=lambda1(sq).value)


@given(full_polytopes(2, bound=3, max_points=6))
def test_packing_holds_for_centered_bodies(p):
    k = center(p)
    assert packing_check(k, enumerate_lattice_points(k).points)


@given(full_polytopes(2, bound=3, max_points=6))
def test_symmetric_bodies_obey_betke_bound(p):
    k = center(p)
    sym = intersect(k, reflect(k))
    assert count(sym) <= symmetric_bound(2, lambda1(sym).value)


def test_family_small_cases():
    f2 = unbounded_family(2)
    assert set(f2.vertices) == {(-2, -1), (2, -1), (0, 1)}
    assert centroid(f2) == (0, Fraction(-1, 3))
    # brute force over [-2,2] x [-1,1]
    pts = [(x, y) for x in range(-2, 3) for y in range(-1, 2) if f2.hrep.contains((x, y))]
    assert count(f2) == len(pts) == 9
    f5 = unbounded_family(5)
    assert count_interior(f5) == len(brute_interior(f5)) == 1


def test_family_growth():
    prev = 0
    for m in range(2, 21):
        f = unbounded_family(m)
        g = count(f)
        assert g == len(brute_points(f))
        assert g >= 2 * m + 1 and g >= prev
        assert count_interior(f) == 1
        prev = g
    with pytest.raises(ValueError):
        unbounded_family(1)


def test_lambda1_requires_origin_inside():
    with pytest.raises(PreconditionError):
        lambda1(Polytope(2, [(1, 1), (3, 1), (1, 3)]))
