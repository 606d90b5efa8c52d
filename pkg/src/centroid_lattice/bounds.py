"""Lattice-point bounds for centroid-zero bodies and the predicates used to check them."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

from .barycentric import bary_of_point, build_grid, cell_of, n_of_rho
from .exact import Q, Singular, det, inverse, is_integral, is_unimodular, matmul, matvec, neg, scale, sub
from .lattice import Body, as_polytope, enumerate_lattice_points, lambda1
from .polytope import (
    DegenerateError,
    HalfSpace,
    Polytope,
    PreconditionError,
    Simplex,
    centroid,
    clip_polytope,
    ehrhart_simplex,
    intersect,
    reflect,
    volume,
)


def prop1_bound(d: int, lambda_1) -> Fraction:
    """``2^d (2/lambda_1 + 1)^d``."""
    lam = Q(lambda_1)
    if lam <= 0:
        raise ValueError("lambda_1 must be positive")
    return Fraction(2) ** d * (2 / lam + 1) ** d


def conjecture_bound(d: int, lambda_1) -> int:
    """``C(d + ceil((d+1)/lambda_1), d)``; exact for simplices, conjectured in general."""
    return math.comb(d + n_of_rho(d, lambda_1), d)


def symmetric_bound(d: int, lambda_1) -> int:
    """``floor(2/lambda_1 + 1)^d``, the bound for o-symmetric bodies."""
    return math.floor(2 / Q(lambda_1) + 1) ** d


@dataclass
class BoundResult:
    bound: object
    actual: int
    status: str  # "strict" | "equal" | "violated"
    strict_required: bool = False
    witnesses: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, actual: int, bound, strict_required=False, **witnesses) -> "BoundResult":
        if actual < bound:
            status = "strict"
        elif actual == bound and not strict_required:
            status = "equal"
        else:
            status = "violated"
        return cls(bound, actual, status, strict_required, dict(witnesses))

    @property
    def passed(self) -> bool:
        return self.status != "violated" and all(
            v for k, v in self.witnesses.items() if k.endswith("_holds") and v is not None
        )


def check_centroid_zero(p: Polytope) -> None:
    if any(c != 0 for c in centroid(p)):
        raise PreconditionError("body centroid is not the origin; call center() first")


def center(p: Polytope) -> Polytope:
    """Translate ``p`` so that its centroid is the origin."""
    return p.translate(neg(centroid(p)))


def verify_prop1(body: Body) -> BoundResult:
    """``G(K) < 2^d (2/lambda_1 + 1)^d`` together with the volume-ratio step it comes from."""
    p = as_polytope(body)
    check_centroid_zero(p)
    d = p.dim
    pts = enumerate_lattice_points(p)
    lam = lambda1(p)
    sym = intersect(p, reflect(p))
    vol_outer = volume(p.scaled(1 + lam.value / 2))
    vol_cell = volume(sym.scaled(lam.value / 2))
    ratio = vol_outer / vol_cell
    res = BoundResult.compare(
        pts.count,
        prop1_bound(d, lam.value),
        strict_required=True,
        lambda1=lam.value,
        witness=lam.witness,
        volume=volume(p),
        symmetric_volume=volume(sym),
        volume_ratio=ratio,
        volume_ratio_holds=pts.count <= ratio,
    )
    return res


def verify_simplex_bound(s: Simplex, with_equality=True) -> BoundResult:
    """``G(S) <= C(d + n(lambda_1), d)`` for a centroid-zero simplex.

    Also re-runs the pigeonhole step: with ``rho = lambda_1`` the residue
    cells of the lattice points' barycentric coordinates must be distinct.
    """
    p = s.polytope
    check_centroid_zero(p)
    pts = enumerate_lattice_points(p)
    lam = lambda1(p)
    grid = build_grid(s.dim, lam.value)
    cells = [cell_of(bary_of_point(s, x), grid).coords for x in pts.points]
    res = BoundResult.compare(
        pts.count,
        conjecture_bound(s.dim, lam.value),
        lambda1=lam.value,
        witness=lam.witness,
        n=grid.n,
        cells_distinct_holds=len(set(cells)) == len(cells),
    )
    if with_equality and res.status == "equal":
        res.witnesses["equality"] = equality_case_check(s, lam.value)
    return res


@dataclass(frozen=True)
class Certificate:
    """``s = U t + z`` with vertex ``perm[i]`` of ``t`` mapped to vertex ``i`` of ``s``."""

    U: tuple
    z: tuple
    perm: tuple

    def apply(self, points: Sequence[Sequence]) -> list[tuple]:
        return [tuple(a + b for a, b in zip(matvec(self.U, x), self.z)) for x in points]

    def to_json(self) -> dict:
        from .exact import qstr

        return {
            "U": [[qstr(x) for x in row] for row in self.U],
            "z": [qstr(x) for x in self.z],
            "perm": list(self.perm),
        }


def unimodular_equivalent(s: Simplex, t: Simplex) -> Optional[Certificate]:
    """Search the ``(d+1)!`` vertex matchings for an integral unimodular ``U`` and integral ``z``.

    Returns the first certificate found (in permutation order) or None.
    """
    if s.dim != t.dim:
        raise ValueError("simplices of different dimensions")
    if s.volume != t.volume:
        return None
    d = s.dim
    es = s.edge_matrix()
    for perm in itertools.permutations(range(d + 1)):
        tv = [t.vertices[i] for i in perm]
        et = tuple(zip(*[sub(v, tv[0]) for v in tv[1:]]))
        try:
            u = matmul(es, inverse(et))
        except Singular:
            raise DegenerateError("degenerate simplex") from None
        if not is_unimodular(u):
            continue
        z = sub(s.vertices[0], matvec(u, tv[0]))
        if is_integral(z):
            return Certificate(u, z, perm)
    return None


@dataclass
class EqualityCheck:
    applicable: bool
    lambda1: Fraction
    equivalent: Optional[bool] = None
    certificate: Optional[Certificate] = None
    m_matrix: Optional[tuple] = None
    m_unimodular: Optional[bool] = None
    bary_is_grid: Optional[bool] = None

    def __bool__(self):
        return bool(self.equivalent)


def equality_case_check(s: Simplex, lambda_1=None) -> EqualityCheck:
    """Is ``s`` unimodularly equivalent to ``lambda_1^{-1} S_d``?

    Only decided when ``1/lambda_1`` is an integer; otherwise the result is
    flagged not applicable.  Also recomputes the matrix with columns
    ``(v_i - v_{d+1}) / n(lambda_1)`` and whether the lattice points'
    barycentric coordinates are exactly the residue grid.
    """
    check_centroid_zero(s.polytope)
    lam = Q(lambda_1) if lambda_1 is not None else lambda1(s.polytope).value
    inv = 1 / lam
    if inv.denominator != 1:
        return EqualityCheck(False, lam)
    target = ehrhart_simplex(s.dim, int(inv))
    cert = unimodular_equivalent(s, target)
    n = n_of_rho(s.dim, lam)
    last = s.vertices[-1]
    cols = [scale(Fraction(1, n), sub(v, last)) for v in s.vertices[:-1]]
    m = tuple(zip(*cols))
    grid = build_grid(s.dim, lam)
    barys = {bary_of_point(s, x).coords for x in enumerate_lattice_points(s.polytope).points}
    return EqualityCheck(
        True,
        lam,
        equivalent=cert is not None,
        certificate=cert,
        m_matrix=m,
        m_unimodular=is_unimodular(m),
        bary_is_grid=barys == grid.residue_set,
    )


class RatioCheck(NamedTuple):
    value: Fraction
    passed: bool


def milman_pajor_check(p: Polytope) -> RatioCheck:
    """``vol(K intersect -K) / vol(K)`` and whether it is at least ``2^-d``."""
    check_centroid_zero(p)
    ratio = volume(intersect(p, reflect(p))) / volume(p)
    return RatioCheck(ratio, ratio >= Fraction(1, 2**p.dim))


def gruenbaum_check(p: Polytope, hs: HalfSpace) -> RatioCheck:
    """Volume fraction of ``p`` on the halfspace side; at least ``(d/(d+1))^d``."""
    check_centroid_zero(p)
    if hs.offset < 0:
        raise PreconditionError("halfspace does not contain the centroid")
    frac = volume(clip_polytope(p, hs)) / volume(p)
    d = p.dim
    return RatioCheck(frac, frac >= Fraction(d, d + 1) ** d)
