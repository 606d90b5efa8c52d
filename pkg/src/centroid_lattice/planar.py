"""Planar lattice polygons: Pick, Scott, and the ten-point bound for centroid-zero bodies."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .bounds import BoundResult, Certificate, center, check_centroid_zero, gruenbaum_check, unimodular_equivalent
from .exact import is_integral
from .lattice import Body, as_polytope, enumerate_lattice_points
from .polytope import (
    DegenerateError,
    HalfSpace,
    Polytope,
    PreconditionError,
    Simplex,
    affine_dimension,
    centroid,
    clip_polytope,
    ehrhart_simplex,
    hull2d,
    membership,
    volume,
)

S2 = ehrhart_simplex(2)


@dataclass(frozen=True)
class PlanarCounts:
    total: int
    boundary: int
    interior: int
    area: Fraction


class PickCheck(NamedTuple):
    counts: PlanarCounts
    holds: bool
    edge_gcd_boundary: int


class ScottCheck(NamedTuple):
    deficit: int
    equality: bool
    passed: bool
    certificate: Optional[Certificate]


def _lattice_polygon(p: Polytope) -> Polytope:
    if p.dim != 2:
        raise PreconditionError("planar polygon required")
    if not is_integral(p.vertices):
        raise PreconditionError("polygon vertices must be integral")
    if not p.is_full:
        raise DegenerateError("polygon is flat")
    return hull2d(p.vertices)


def edge_gcd_sum(p: Polytope) -> int:
    """Boundary lattice points of a lattice polygon: sum of gcd(|dx|, |dy|) over the edges."""
    vs = hull2d(p.vertices).vertices
    n = len(vs)
    return sum(
        math.gcd(int(vs[(i + 1) % n][0] - vs[i][0]), int(vs[(i + 1) % n][1] - vs[i][1])) for i in range(n)
    )


def planar_counts(p: Polytope) -> PlanarCounts:
    pts = enumerate_lattice_points(p)
    return PlanarCounts(pts.count, pts.count - pts.interior_count, pts.interior_count, volume(p))


def pick_identity(p: Polytope) -> PickCheck:
    p = _lattice_polygon(p)
    c = planar_counts(p)
    return PickCheck(c, c.total == c.area + Fraction(c.boundary, 2) + 1, edge_gcd_sum(p))


def scott_deficit(p: Polytope) -> ScottCheck:
    """``b - 2i`` for a lattice polygon with an interior point; at most 7.

    On equality a triangle is matched against S_2 and the certificate is
    returned; a non-triangle reaching 7 comes back uncertified.
    """
    p = _lattice_polygon(p)
    c = planar_counts(p)
    if c.interior < 1:
        raise PreconditionError("polygon has no interior lattice point")
    deficit = c.boundary - 2 * c.interior
    cert = None
    if deficit == 7 and len(p.vertices) == 3:
        cert = unimodular_equivalent(S2, Simplex(2, p.vertices))
    return ScottCheck(deficit, deficit == 7, deficit <= 7, cert)


def ehrhart_planar_check(p: Polytope) -> Optional[bool]:
    """At least two nonzero lattice points once a centroid-zero body has area >= 9/2.

    None when the preconditions do not hold.
    """
    if p.dim != 2 or not p.is_full or any(x != 0 for x in centroid(p)) or volume(p) < Fraction(9, 2):
        return None
    pts = enumerate_lattice_points(p).points
    return sum(1 for x in pts if x != (0, 0)) >= 2


def _halfspace_through_origin(points) -> HalfSpace:
    """A halfspace ``a.x <= 0`` containing every point.

    If one exists, rotating its boundary about the origin until it hits a
    point shows one is perpendicular to some point, so only those are tried.
    """
    for v in points:
        if v == (0, 0):
            continue
        for a in ((-v[1], v[0]), (v[1], -v[0])):
            if all(a[0] * x[0] + a[1] * x[1] <= 0 for x in points):
                return HalfSpace(a, 0)
    if all(v == (0, 0) for v in points):
        return HalfSpace((1, 0), 0)
    raise ValueError("origin is interior to the hull")


def verify_thm3(body: Body) -> BoundResult:
    """``G(K) <= 10`` for a planar centroid-zero body whose only interior lattice point is 0.

    Replays the argument with exact intermediate quantities.  With
    ``P = conv(K cap Z^2)``: if the origin is not interior to ``P`` a
    halfspace through 0 holds all lattice points and the area chain
    ``vol P <= vol(K cap H) <= 5/9 vol K <= 5/2`` plus Pick gives ``G <= 7``;
    otherwise ``9/2 >= vol K >= vol P = G/2 - 1/2`` gives ``G <= 10``, and
    ``G = 10`` forces ``P = K`` equivalent to S_2.
    """
    k = as_polytope(body)
    if k.dim != 2:
        raise PreconditionError("planar body required")
    check_centroid_zero(k)
    lat = enumerate_lattice_points(k)
    if lat.interior_count != 1:
        raise PreconditionError(f"body has {lat.interior_count} interior lattice points, expected 1")
    g = lat.count
    vol_k = volume(k)
    w: dict = {"volume_K": vol_k, "ehrhart_volume_holds": vol_k <= Fraction(9, 2)}
    pts = list(lat.points)
    p_full = affine_dimension(pts) == 2
    p = hull2d(pts) if p_full else None
    vol_p = volume(p) if p_full else Fraction(0)
    w["volume_P"] = vol_p
    origin_inside = p_full and membership(p.hrep, (0, 0)) == "interior"

    if not origin_inside:
        w["case"] = "origin_not_interior_to_P"
        h = _halfspace_through_origin(pts)
        opposite = HalfSpace(tuple(-x for x in h.normal), 0)
        vol_kh = volume(clip_polytope(k, h))
        grb = gruenbaum_check(k, opposite)
        w.update(
            halfspace=h,
            volume_K_cap_H=vol_kh,
            halfspace_keeps_points_holds=all(h.contains(x) for x in pts),
            p_inside_kh_holds=vol_p <= vol_kh,
            gruenbaum_fraction=grb.value,
            gruenbaum_holds=grb.passed,
            five_ninths_holds=vol_kh <= Fraction(5, 9) * vol_k,
            area_chain_holds=Fraction(5, 9) * vol_k <= Fraction(5, 2),
        )
        if p_full:
            pc = pick_identity(p)
            w["pick_holds"] = pc.holds
            w["boundary_P"] = pc.counts.boundary
            w["pick_chain_holds"] = g == vol_p + Fraction(pc.counts.boundary, 2) + 1 and pc.counts.boundary <= g
        else:
            w["P_flat"] = True
        w["seven_holds"] = g <= 7
        return BoundResult.compare(g, 10, **w)

    w["case"] = "origin_interior_to_P"
    pc = pick_identity(p)
    w.update(
        pick_holds=pc.holds,
        boundary_P=pc.counts.boundary,
        boundary_is_G_minus_1_holds=pc.counts.boundary == g - 1,
        volume_chain_holds=Fraction(9, 2) >= vol_k >= vol_p == Fraction(g, 1) - Fraction(g - 1, 2) - 1,
    )
    res = BoundResult.compare(g, 10, **w)
    if g == 10:
        res.witnesses["volumes_equal_holds"] = vol_k == vol_p
        res.witnesses["P_equals_K_holds"] = p.same_set(k)
        cert = unimodular_equivalent(S2, Simplex(2, p.vertices)) if len(p.vertices) == 3 else None
        res.witnesses["certificate"] = cert
        res.witnesses["equivalent_to_S2_holds"] = cert is not None
    return res
