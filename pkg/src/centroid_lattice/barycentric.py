"""Barycentric coordinates and the residue-grid covering of the standard simplex.

The covering: for ``rho > 0`` put ``n = ceil((d+1)/rho)``.  The residues are
the points of the standard simplex ``B`` whose coordinates are multiples of
``1/n``; each residue ``r`` owns the half-open cell
``{x in B : r_i <= x_i < r_i + 1/n, i = 1..d}`` (the last coordinate is
unconstrained).  These cells partition ``B``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Q, Singular, solve_linear, sub, vec
from .polytope import DegenerateError, PreconditionError, Simplex


@dataclass(frozen=True)
class BaryCoords:
    coords: tuple

    def __post_init__(self):
        c = vec(self.coords)
        if sum(c) != 1:
            raise ValueError(f"barycentric coordinates must sum to 1, got {sum(c)}")
        object.__setattr__(self, "coords", c)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __iter__(self):
        return iter(self.coords)

    @property
    def in_standard_simplex(self) -> bool:
        return all(x >= 0 for x in self.coords)

    @property
    def in_interior(self) -> bool:
        return all(x > 0 for x in self.coords)


def bary_of_point(s: Simplex, x: Sequence) -> BaryCoords:
    x = vec(x)
    if len(x) != s.dim:
        raise ValueError("point and simplex dimensions differ")
    d = s.dim
    # rows: coordinates of sum beta_i v_i, plus the affine row sum beta_i = 1
    a = [[v[j] for v in s.vertices] for j in range(d)] + [[1] * (d + 1)]
    try:
        beta = solve_linear(a, list(x) + [1])
    except Singular:
        raise DegenerateError("simplex is degenerate") from None
    return BaryCoords(beta)


def point_of_bary(s: Simplex, b: BaryCoords | Sequence) -> tuple:
    coords = vec(b)
    if len(coords) != s.dim + 1:
        raise ValueError(f"need {s.dim + 1} barycentric coordinates")
    return tuple(sum(c * v[j] for c, v in zip(coords, s.vertices)) for j in range(s.dim))


def n_of_rho(d: int, rho) -> int:
    rho = Q(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    return math.ceil((d + 1) / rho)


def compositions(n: int, parts: int):
    """Weak compositions of ``n`` into ``parts`` nonnegative integers, lexicographically descending."""
    # stars and bars
    for bars in combinations(range(n + parts - 1), parts - 1):
        prev = -1
        out = []
        for b in bars:
            out.append(b - prev - 1)
            prev = b
        out.append(n + parts - 2 - prev)
        yield tuple(out)


@dataclass(frozen=True)
class CoveringGrid:
    d: int
    rho: Fraction
    n: int
    residues: tuple = field(repr=False)

    @property
    def residue_set(self) -> frozenset:
        return frozenset(r.coords for r in self.residues)

    def to_json(self) -> dict:
        from .exact import qstr

        return {
            "d": self.d,
            "rho": qstr(self.rho),
            "n": self.n,
            "size": len(self.residues),
            "residues": [[qstr(x) for x in r] for r in self.residues],
        }


def build_grid(d: int, rho) -> CoveringGrid:
    rho = Q(rho)
    n = n_of_rho(d, rho)
    residues = tuple(BaryCoords(tuple(Fraction(a, n) for a in comp)) for comp in compositions(n, d + 1))
    return CoveringGrid(d, rho, n, residues)


def cell_of(b: BaryCoords | Sequence, grid: CoveringGrid) -> BaryCoords:
    """Residue owning ``b``: floor the first ``d`` coordinates to the grid, fill the last."""
    coords = vec(b)
    if len(coords) != grid.d + 1:
        raise ValueError(f"need {grid.d + 1} coordinates")
    if any(x < 0 for x in coords):
        raise ValueError("point is not in the standard simplex")
    n = grid.n
    head = [Fraction(math.floor(n * x), n) for x in coords[:-1]]
    return BaryCoords(tuple(head) + (1 - sum(head),))


def in_cell(b: Sequence, r: Sequence, n: int) -> bool:
    """``b`` lies in ``r + Z``: ``0 <= b_i - r_i < 1/n`` for every coordinate but the last."""
    width = Fraction(1, n)
    return all(0 <= x - y < width for x, y in zip(list(b)[:-1], list(r)[:-1]))


def check_centroid_zero(s: Simplex) -> None:
    if any(c != 0 for c in s.centroid):
        raise PreconditionError("simplex centroid is not the origin")


def max_separation(bu: Sequence, bw: Sequence) -> tuple[int, Fraction]:
    """``(k, bu_k - bw_k)`` maximizing the difference, lowest ``k`` on ties."""
    diffs = [x - y for x, y in zip(bu, bw)]
    best = max(diffs)
    return diffs.index(best), best


def lemma1_separation(s: Simplex, u: Sequence[int], w: Sequence[int], lambda_1=None) -> tuple[int, Fraction]:
    """Coordinate where the barycentric coordinates of ``u`` exceed those of ``w`` most.

    Returns ``(k, beta(u)_k - beta(w)_k)`` with a 0-based ``k`` (lowest index
    on ties).  For a centroid-zero simplex and distinct lattice points in it
    the value is at least ``lambda_1 / (d + 1)``; that bound is checked when
    ``lambda_1`` is given.
    """
    check_centroid_zero(s)
    u, w = vec(u), vec(w)
    if u == w:
        raise ValueError("points must be distinct")
    bu, bw = bary_of_point(s, u), bary_of_point(s, w)
    if not (bu.in_standard_simplex and bw.in_standard_simplex):
        raise PreconditionError("points must lie in the simplex")
    k, best = max_separation(bu, bw)
    if lambda_1 is not None and best < Q(lambda_1) / (s.dim + 1):
        raise AssertionError(f"separation {best} below lambda_1/(d+1) for {u}, {w}")
    return k, best
