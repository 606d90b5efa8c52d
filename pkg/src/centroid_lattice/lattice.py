"""Lattice points of rational polytopes and the first successive minimum."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .exact import Q, sub
from .polytope import (
    HalfSpace,
    HRep,
    Polytope,
    PreconditionError,
    check_origin_interior,
    gauge,
    vertex_enum,
)

Body = Union[HRep, Polytope]


@dataclass(frozen=True)
class LatticePointSet:
    dim: int
    points: tuple
    interior: tuple  # one flag per point

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def interior_count(self) -> int:
        return sum(self.interior)

    @property
    def interior_points(self) -> list:
        return [p for p, f in zip(self.points, self.interior) if f]

    @property
    def boundary_points(self) -> list:
        return [p for p, f in zip(self.points, self.interior) if not f]

    def to_json(self) -> dict:
        return {"count": self.count, "interior": self.interior_count, "points": [list(p) for p in self.points]}


class Lambda1(NamedTuple):
    value: Fraction
    witness: tuple


def as_hrep(body: Body) -> HRep:
    return body.hrep if isinstance(body, Polytope) else body


def as_polytope(body: Body) -> Polytope:
    return body if isinstance(body, Polytope) else vertex_enum(body)


def _integer_rows(halfspaces: Sequence[HalfSpace], t=1) -> list[tuple[tuple[int, ...], int]]:
    # a.x <= t*b  rewritten as  (q a).x <= p  with t*b = p/q
    rows = []
    for hs in halfspaces:
        b = Q(t) * hs.offset
        rows.append((tuple(b.denominator * a for a in hs.normal), b.numerator))
    return rows


def _floor_div(p: int, q: int) -> int:
    return p // q


def _ceil_div(p: int, q: int) -> int:
    return -((-p) // q)


def _scan(rows, box, classify: bool):
    """Yield ``(point, is_interior)`` for integer points satisfying ``rows``.

    The first ``d - 1`` coordinates run over the bounding box in
    lexicographic order; the last coordinate's range is solved exactly from
    the constraints.
    """
    d = len(box)
    last = d - 1
    prefix_ranges = [range(lo, hi + 1) for lo, hi in box[:last]]
    lo_box, hi_box = box[last]

    def rec(level, prefix, partial):
        if level == last:
            lo, hi = lo_box, hi_box
            slo, shi = lo_box, hi_box
            flat_strict = True
            for (a, b), part in zip(rows, partial):
                c = a[last]
                r = b - part
                if c == 0:
                    if r < 0:
                        return
                    if r == 0:
                        flat_strict = False
                elif c > 0:
                    hi = min(hi, _floor_div(r, c))
                    shi = min(shi, _ceil_div(r, c) - 1)
                else:
                    lo = max(lo, _ceil_div(r, c))
                    slo = max(slo, _floor_div(r, c) + 1)
                if lo > hi:
                    return
            for x in range(lo, hi + 1):
                yield prefix + (x,), flat_strict and slo <= x <= shi
            return
        for x in prefix_ranges[level]:
            nxt = [p + a[level] * x for (a, _), p in zip(rows, partial)]
            yield from rec(level + 1, prefix + (x,), nxt)

    yield from rec(0, (), [0] * len(rows))


def _bounding_box(poly: Polytope, t=1) -> list[tuple[int, int]]:
    t = Q(t)
    box = []
    for coords in zip(*poly.vertices):
        vals = [t * c for c in coords]
        box.append((math.ceil(min(vals)), math.floor(max(vals))))
    return box


def enumerate_lattice_points(body: Body) -> LatticePointSet:
    """All integer points of a bounded body, in lexicographic order.

    Points on a facet count toward the total but are not interior.
    """
    poly = as_polytope(body)
    h = poly.hrep if poly.is_full else as_hrep(body)
    rows = _integer_rows(h.halfspaces)
    box = _bounding_box(poly)
    if any(lo > hi for lo, hi in box):
        return LatticePointSet(poly.dim, (), ())
    found = list(_scan(rows, box, True))
    return LatticePointSet(poly.dim, tuple(p for p, _ in found), tuple(f for _, f in found))


def enumerate_reverse(body: Body) -> list[tuple]:
    """Independent slow traversal: plain box scan in reverse order with exact membership."""
    import itertools

    poly = as_polytope(body)
    h = poly.hrep
    box = _bounding_box(poly)
    ranges = [range(hi, lo - 1, -1) for lo, hi in box]
    return [p for p in itertools.product(*ranges) if h.contains(p)]


def count(body: Body) -> int:
    return enumerate_lattice_points(body).count


def count_interior(body: Body) -> int:
    return enumerate_lattice_points(body).interior_count


def _candidates(h: HRep, t) -> list[tuple]:
    poly = vertex_enum(h)
    rows = _integer_rows(h.halfspaces, t)
    box = _bounding_box(poly, t)
    if any(lo > hi for lo, hi in box):
        return []
    return [p for p, _ in _scan(rows, box, False)]


def lambda1(body: Body) -> Lambda1:
    """First successive minimum with a witness lattice vector.

    Every nonzero lattice vector of ``t0 K`` is a candidate, where ``t0`` is
    the smallest gauge of a signed unit vector; the minimum gauge over that
    finite set is exact.  Ties prefer short vectors, then positive entries.
    """
    h = as_hrep(body)
    check_origin_interior(h)
    d = h.dim
    units = []
    for i in range(d):
        for s in (1, -1):
            units.append(tuple(s if j == i else 0 for j in range(d)))
    t0 = min(gauge(h, u) for u in units)
    zero = (0,) * d
    best = None
    for z in _candidates(h, t0):
        if z == zero:
            continue
        key = (gauge(h, z), sum(abs(x) for x in z), tuple(-x for x in z))
        if best is None or key < best[0]:
            best = (key, z)
    assert best is not None, "a signed unit vector lies in t0 K"
    return Lambda1(best[0][0], best[1])


def symmetric_gauge(h: HRep, z: Sequence) -> Fraction:
    """Gauge of ``K intersect -K``, i.e. ``max(g_K(z), g_K(-z))``."""
    return max(gauge(h, z), gauge(h, tuple(-Q(x) for x in z)))


def packing_check(body: Body, points: Sequence[Sequence[int]], scale=None) -> bool:
    """Do the translates ``u + scale (K intersect -K)`` have pairwise disjoint interiors?

    ``scale`` defaults to ``lambda_1 / 2``.  Two translates by ``u`` and
    ``v`` overlap in their interiors exactly when ``u - v`` lies in
    ``2 scale int(K intersect -K)``.
    """
    h = as_hrep(body)
    check_origin_interior(h)
    pts = [tuple(int(x) for x in p) for p in points]
    if len(set(pts)) != len(pts):
        raise PreconditionError("points must be distinct")
    if scale is None:
        scale = lambda1(h).value / 2
    reach = 2 * Q(scale)
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if symmetric_gauge(h, sub(pts[i], pts[j])) < reach:
                return False
    return True


def unbounded_family(m: int) -> Polytope:
    """Triangle ``(-m,-1), (m,-1), (0, 1/(m-1))``: one interior lattice point, unbounded count."""
    if m < 2:
        raise ValueError("family is defined for m >= 2")
    return Polytope(2, [(-m, -1), (m, -1), (0, Fraction(1, m - 1))])
