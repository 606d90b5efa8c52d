import math
from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from centroid_lattice.bounds import (
    center,
    conjecture_bound,
    equality_case_check,
    gruenbaum_check,
    milman_pajor_check,
    prop1_bound,
    symmetric_bound,
    unimodular_equivalent,
    verify_prop1,
    verify_simplex_bound,
)
from centroid_lattice.exact import is_unimodular, matmul
from centroid_lattice.lattice import count, lambda1
from centroid_lattice.polytope import (
    HalfSpace,
    Polytope,
    PreconditionError,
    Simplex,
    cube,
    ehrhart_simplex,
    intersect,
    reflect,
    volume,
)

from .conftest import HEXAGON, S2, S3, full_polytopes, unimodular

F = Fraction


@st.composite
def centroid_triangles(draw, bound=3):
    a = draw(st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)))
    b = draw(st.tuples(st.integers(-bound, bound), st.integers(-bound, bound)))
    c = (-a[0] - b[0], -a[1] - b[1])
    assume((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]) != 0)
    return Simplex.of([a, b, c])


def test_bound_formulas():
    assert prop1_bound(2, 1) == 36
    assert prop1_bound(3, 1) == 216
    assert prop1_bound(2, 2) == 16
    assert conjecture_bound(2, 1) == 10
    assert conjecture_bound(3, 1) == 35
    assert conjecture_bound(2, F(1, 2)) == 28
    assert symmetric_bound(2, F(1, 2)) == 25


def test_prop1_examples():
    for body, g, bound in [(S2.polytope, 10, 36), (cube(2), 9, 36), (S3.polytope, 35, 216)]:
        res = verify_prop1(body)
        assert (res.actual, res.bound, res.status) == (g, bound, "strict")
        assert res.passed
        assert res.witnesses["volume_ratio"] >= g


def test_prop1_volume_ratio_s2():
    # vol(3/2 S2) / vol(1/2 hexagon) = (9/4 * 9/2) / (1/4 * 3)
    res = verify_prop1(S2.polytope)
    assert res.witnesses["volume_ratio"] == F(81, 8) / F(3, 4)


def test_prop1_requires_centroid_zero():
    with pytest.raises(PreconditionError):
        verify_prop1(Polytope(2, [(0, 0), (3, 0), (0, 3)]))


def test_center_is_explicit():
    p = Polytope(2, [(0, 0), (3, 0), (0, 3)])
    assert set(center(p).vertices) == {(-1, -1), (2, -1), (-1, 2)}


def test_simplex_bound_examples():
    res = verify_simplex_bound(S2)
    assert (res.actual, res.bound, res.status) == (10, 10, "equal")
    assert res.witnesses["equality"].equivalent
    for m in (2, 3):
        res = verify_simplex_bound(ehrhart_simplex(2, m))
        assert res.actual == math.comb(2 + 3 * m, 2) == res.bound
        assert res.status == "equal"


def test_simplex_bound_strict_triangle():
    t = Polytope(2, [(-1, -1), (1, 0), (0, 1)])
    t = center(t)
    assert all(x.denominator == 1 for v in t.vertices for x in v)
    res = verify_simplex_bound(Simplex(2, t.vertices))
    assert res.status == "strict"
    assert not equality_case_check(Simplex(2, t.vertices))


def test_unimodular_examples():
    shear = [[1, 1], [0, 1]]
    t = S2.linear_image(shear).translate((1, 0))
    cert = unimodular_equivalent(t, S2)
    assert cert is not None
    assert sorted(cert.apply(S2.vertices)) == sorted(t.vertices)
    neg = S2.linear_image([[-1, 0], [0, -1]])
    cert = unimodular_equivalent(neg, S2)
    assert cert is not None and is_unimodular(cert.U)
    assert unimodular_equivalent(S2, ehrhart_simplex(2, 2)) is None


@given(unimodular(2), unimodular(2), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_equivalence_relation(u1, u2, z):
    a = S2
    b = S2.linear_image(u1).translate(z)
    c = b.linear_image(u2)
    assert unimodular_equivalent(a, a) is not None
    ab, ba = unimodular_equivalent(a, b), unimodular_equivalent(b, a)
    assert ab is not None and ba is not None
    # composing a = U b + z with b = U' a + z' returns to a
    assert sorted(ab.apply(ba.apply(a.vertices))) == sorted(a.vertices)
    bc, ac = unimodular_equivalent(b, c), unimodular_equivalent(a, c)
    assert bc is not None and ac is not None
    assert is_unimodular(matmul(ab.U, bc.U))


def test_unimodular_rejects_non_integral_shift():
    t = S2.translate((F(1, 2), 0))
    assert unimodular_equivalent(t, S2) is None


def test_equality_case_examples():
    assert equality_case_check(S2)
    eq = equality_case_check(ehrhart_simplex(2, 2))
    assert eq.applicable and eq.equivalent and eq.m_unimodular and eq.bary_is_grid
    assert eq.lambda1 == F(1, 2)


@given(centroid_triangles())
def test_simplex_status_matches_equality_case(s):
    res = verify_simplex_bound(s)
    assert res.passed
    eq = equality_case_check(s)
    if eq.applicable:
        assert (res.status == "equal") == bool(eq.equivalent)
    else:
        assert eq.equivalent is None


def test_milman_pajor_examples():
    mp = milman_pajor_check(S2.polytope)
    assert mp.value == F(2, 3) and mp.passed
    assert milman_pajor_check(cube(2)).value == 1
    mp3 = milman_pajor_check(S3.polytope)
    assert mp3.passed and mp3.value >= F(1, 8)
    assert mp3.value == volume(intersect(S3.polytope, reflect(S3.polytope))) / F(32, 3)


@given(full_polytopes(2, bound=3, max_points=6))
def test_milman_pajor_symmetry_iff_one(p):
    k = center(p)
    mp = milman_pajor_check(k)
    assert mp.passed
    assert (mp.value == 1) == reflect(k).same_set(k)


def test_gruenbaum_examples():
    g = gruenbaum_check(S2.polytope, HalfSpace((1, 0), 0))
    assert g.value == F(5, 9) and g.passed
    assert gruenbaum_check(S2.polytope, HalfSpace((1, 0), 10)).value == 1
    # facet-parallel through the centroid: the side containing the opposite vertex
    for d in (2, 3):
        s = ehrhart_simplex(d)
        for hs in s.hrep.halfspaces:
            g = gruenbaum_check(s.polytope, HalfSpace(hs.normal, 0))
            assert g.value == F(d, d + 1) ** d
    with pytest.raises(PreconditionError):
        gruenbaum_check(S2.polytope, HalfSpace((1, 0), -1))


@given(full_polytopes(2, bound=3, max_points=6), st.tuples(st.integers(-9, 9), st.integers(-9, 9)))
def test_gruenbaum_random(p, a):
    assume(any(a))
    k = center(p)
    assert gruenbaum_check(k, HalfSpace(a, 0)).passed


def test_hexagon_is_symmetric():
    assert milman_pajor_check(HEXAGON).value == 1
    assert count(HEXAGON) <= symmetric_bound(2, lambda1(HEXAGON).value)
