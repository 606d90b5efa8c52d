"""Rational convex polytopes in dimensions 1-4.

Polytopes are kept in both representations.  :class:`Polytope` holds the
irredundant vertex list and lazily derives its facets; :class:`HRep` holds
a list of halfspaces ``a.x <= b`` whose normals are normalized to primitive
integer vectors, which keeps equality of halfspaces decidable and makes
membership tests for lattice points pure integer arithmetic.

Vertex and facet enumeration are brute force over subsets (``O(m^d)``).
That is exact and fast enough for the small bodies this package works with.
Internally the heavy loops run on integers: vertex sets are scaled to a
common denominator and halfspaces become homogeneous integer rows.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import (
    DimensionError,
    Q,
    add,
    det,
    dot,
    int_det,
    int_dot,
    int_kernel,
    int_rank,
    matvec,
    neg,
    primitive,
    scale,
    sub,
    vec,
)

MAX_DIM = 4


class GeometryError(ValueError):
    pass


class DegenerateError(GeometryError):
    """Input is lower-dimensional where a full-dimensional body is required."""


class UnboundedError(GeometryError):
    pass


class InfeasibleError(GeometryError):
    pass


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """The closed halfspace ``{x : normal . x <= offset}``.

    On construction the normal is rescaled to the primitive integer vector in
    its direction (the offset is scaled along), so two halfspaces describing
    the same set compare equal.
    """

    normal: tuple
    offset: Fraction

    def __post_init__(self):
        a = vec(self.normal)
        if all(x == 0 for x in a):
            raise GeometryError("halfspace normal must be nonzero")
        p = primitive(a)
        i = next(k for k, x in enumerate(p) if x != 0)
        factor = a[i] / p[i]  # positive
        object.__setattr__(self, "normal", p)
        object.__setattr__(self, "offset", Q(self.offset) / factor)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x)

    def contains(self, x: Sequence) -> bool:
        return dot(self.normal, x) <= self.offset

    def negated(self) -> "HalfSpace":
        """The halfspace of the reflected set ``-H``."""
        return HalfSpace(neg(self.normal), self.offset)

    def row(self) -> tuple[tuple[int, ...], int]:
        """``(q a, p)`` with ``b = p/q``: the same constraint over the integers."""
        q = self.offset.denominator
        return tuple(q * x for x in self.normal), self.offset.numerator


@dataclass(frozen=True)
class HRep:
    dim: int
    halfspaces: tuple

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        for h in hs:
            if h.dim != self.dim:
                raise DimensionError(f"halfspace of dimension {h.dim} in a {self.dim}-dimensional H-rep")
        object.__setattr__(self, "halfspaces", tuple(dict.fromkeys(hs)))

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    def to_polytope(self) -> "Polytope":
        return vertex_enum(self)


@dataclass(frozen=True)
class Polytope:
    """Convex hull of a finite vertex list.

    The constructor trusts that ``vertices`` is irredundant; use
    :meth:`hull` to build a polytope from arbitrary points.  An empty
    vertex tuple is the empty set; fewer affinely independent vertices than
    ``dim + 1`` is a degenerate (flat) polytope.
    """

    dim: int
    vertices: tuple

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vertices)
        for v in vs:
            if len(v) != self.dim:
                raise DimensionError(f"vertex {v} does not have dimension {self.dim}")
        if len(set(vs)) != len(vs):
            raise GeometryError("duplicate vertices")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def hull(cls, points: Iterable[Sequence], dim: int | None = None) -> "Polytope":
        pts = list(dict.fromkeys(vec(p) for p in points))
        if dim is None:
            if not pts:
                raise GeometryError("cannot infer dimension of an empty point set")
            dim = len(pts[0])
        return cls(dim, _extreme_points(pts, dim))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @cached_property
    def scaled_vertices(self) -> tuple[int, list[tuple[int, ...]]]:
        """``(L, [L v for v in vertices])`` with ``L`` the common denominator."""
        return _integer_scaled(self.vertices)

    @cached_property
    def affine_dim(self) -> int:
        return _int_affine_dim(self.scaled_vertices[1])

    @property
    def is_full(self) -> bool:
        return self.affine_dim == self.dim

    @cached_property
    def hrep(self) -> HRep:
        return to_hrep(self)

    @cached_property
    def incidence(self) -> list[frozenset]:
        """For each facet of :attr:`hrep`, the indices of the vertices on it."""
        den, ipts = self.scaled_vertices
        out = []
        for hs in self.hrep.halfspaces:
            a, p = hs.row()
            out.append(frozenset(i for i, v in enumerate(ipts) if int_dot(a, v) == p * den))
        return out

    def sorted_vertices(self) -> tuple:
        return tuple(sorted(self.vertices))

    def same_set(self, other: "Polytope") -> bool:
        return self.dim == other.dim and self.sorted_vertices() == other.sorted_vertices()

    def _derived(self, vertices, halfspaces=None) -> "Polytope":
        out = Polytope(self.dim, vertices)
        if halfspaces is not None:
            out.__dict__["hrep"] = HRep(self.dim, halfspaces)
        return out

    def _has_hrep(self) -> bool:
        return "hrep" in self.__dict__

    def translate(self, t: Sequence) -> "Polytope":
        t = vec(t)
        hs = None
        if self._has_hrep():
            hs = [HalfSpace(h.normal, h.offset + dot(h.normal, t)) for h in self.hrep.halfspaces]
        return self._derived([add(v, t) for v in self.vertices], hs)

    def scaled(self, c) -> "Polytope":
        c = Q(c)
        if c == 0:
            raise GeometryError("scaling by zero")
        hs = None
        if self._has_hrep():
            # a.x <= b on K becomes (a/c).x <= b on cK
            hs = [HalfSpace(scale(1 / c, h.normal), h.offset) for h in self.hrep.halfspaces]
        return self._derived([scale(c, v) for v in self.vertices], hs)

    def negated(self) -> "Polytope":
        hs = [h.negated() for h in self.hrep.halfspaces] if self._has_hrep() else None
        return self._derived([neg(v) for v in self.vertices], hs)

    def linear_image(self, m: Sequence[Sequence]) -> "Polytope":
        if det(m) == 0:
            raise DegenerateError("singular linear map")
        return Polytope(self.dim, [matvec(m, v) for v in self.vertices])


@dataclass(frozen=True)
class Simplex:
    dim: int
    vertices: tuple

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vertices)
        if len(vs) != self.dim + 1 or any(len(v) != self.dim for v in vs):
            raise DimensionError(f"a {self.dim}-simplex needs {self.dim + 1} vertices of length {self.dim}")
        object.__setattr__(self, "vertices", vs)
        if self.edge_det == 0:
            raise DegenerateError("simplex vertices are affinely dependent")

    @classmethod
    def of(cls, vertices: Sequence[Sequence]) -> "Simplex":
        return cls(len(vertices) - 1, vertices)

    def edge_matrix(self) -> tuple:
        """Columns ``v_i - v_0`` for ``i = 1..d``."""
        v0 = self.vertices[0]
        cols = [sub(v, v0) for v in self.vertices[1:]]
        return tuple(zip(*cols))

    @cached_property
    def edge_det(self) -> Fraction:
        return det(self.edge_matrix())

    @property
    def volume(self) -> Fraction:
        return abs(self.edge_det) / math.factorial(self.dim)

    @property
    def centroid(self) -> tuple:
        n = self.dim + 1
        return tuple(sum(c) / n for c in zip(*self.vertices))

    @cached_property
    def polytope(self) -> Polytope:
        return Polytope(self.dim, self.vertices)

    @property
    def hrep(self) -> HRep:
        return self.polytope.hrep

    def translate(self, t: Sequence) -> "Simplex":
        return Simplex(self.dim, [add(v, vec(t)) for v in self.vertices])

    def scaled(self, c) -> "Simplex":
        return Simplex(self.dim, [scale(Q(c), v) for v in self.vertices])

    def linear_image(self, m: Sequence[Sequence]) -> "Simplex":
        return Simplex(self.dim, [matvec(m, v) for v in self.vertices])


def ehrhart_simplex(d: int, m=1) -> Simplex:
    """``m ((d+1) conv{0, e_1, ..., e_d} - 1)``: centroid 0, lambda_1 = 1/m."""
    if d < 1:
        raise DimensionError("dimension must be positive")
    verts = [tuple(-1 for _ in range(d))]
    for i in range(d):
        verts.append(tuple(d if j == i else -1 for j in range(d)))
    return Simplex(d, verts).scaled(m)


def cube(d: int, r=1) -> Polytope:
    """The box ``[-r, r]^d``."""
    r = Q(r)
    return Polytope(d, list(itertools.product((-r, r), repeat=d)))


# --------------------------------------------------------------------------
# integer helpers


def _integer_scaled(points: Sequence[Sequence]) -> tuple[int, list[tuple[int, ...]]]:
    den = math.lcm(*(x.denominator for p in points for x in p)) if points else 1
    return den, [tuple(x.numerator * (den // x.denominator) for x in p) for p in points]


def _int_affine_dim(ipts: Sequence[Sequence[int]]) -> int:
    if not ipts:
        return -1
    base = ipts[0]
    return int_rank([tuple(a - b for a, b in zip(p, base)) for p in ipts[1:]])


def affine_dimension(points: Sequence[Sequence]) -> int:
    return _int_affine_dim(_integer_scaled([vec(p) for p in points])[1])


def _facets_of_points(points: Sequence[Sequence], dim: int) -> list[HalfSpace]:
    """All facet halfspaces of conv(points); points must span R^dim."""
    den, ipts = _integer_scaled(points)
    facets: dict[HalfSpace, None] = {}
    for combo in itertools.combinations(ipts, dim):
        base = combo[0]
        normal = int_kernel([tuple(a - b for a, b in zip(p, base)) for p in combo[1:]])
        if not any(normal):
            continue
        off = int_dot(normal, base)
        lo = hi = False
        for p in ipts:
            s = int_dot(normal, p) - off
            if s > 0:
                hi = True
            elif s < 0:
                lo = True
            if lo and hi:
                break
        if lo and hi:
            continue
        if hi:
            normal, off = tuple(-x for x in normal), -off
        facets[HalfSpace(normal, Fraction(off, den))] = None
    return list(facets)


def _extreme_points(pts: list, dim: int) -> list:
    if len(pts) <= 1:
        return pts
    adim = affine_dimension(pts)
    if dim == 2 and adim == 2:
        return list(_monotone_chain(pts))
    if adim < dim:
        return _extreme_points_flat(pts, adim)
    den, ipts = _integer_scaled(pts)
    rows = [h.row() for h in _facets_of_points(pts, dim)]
    out = []
    for p, ip in zip(pts, ipts):
        tight = [a for a, b in rows if int_dot(a, ip) == b * den]
        if len(tight) >= dim and int_rank(tight) == dim:
            out.append(p)
    return out


def _extreme_points_flat(pts: list, adim: int) -> list:
    """Extreme points of a lower-dimensional point set, via coordinates in its affine hull."""
    from .exact import rank, solve_linear

    base = pts[0]
    diffs = [sub(p, base) for p in pts]
    basis: list = []
    for dvec in diffs:
        if rank(basis + [dvec]) > len(basis):
            basis.append(dvec)
    if not basis:
        return [base]
    gram = [[dot(b1, b2) for b2 in basis] for b1 in basis]
    coords = [solve_linear(gram, [dot(b, dv) for b in basis]) for dv in diffs]
    keep = set(_extreme_points(coords, adim))
    return [p for p, c in zip(pts, coords) if c in keep]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _monotone_chain(points: Sequence[Sequence]) -> tuple:
    pts = sorted(set(vec(p) for p in points))
    if len(pts) < 3:
        return tuple(pts)
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


# --------------------------------------------------------------------------
# operations


def hull2d(points: Iterable[Sequence]) -> Polytope:
    """Counterclockwise convex hull of planar points (Andrew's monotone chain)."""
    pts = [vec(p) for p in points]
    if any(len(p) != 2 for p in pts):
        raise DimensionError("hull2d needs planar points")
    chain = _monotone_chain(pts)
    if len(chain) < 3:
        raise DegenerateError("points are collinear")
    return Polytope(2, chain)


def to_hrep(p: Polytope) -> HRep:
    if p.dim > MAX_DIM:
        raise DimensionError(f"dimension {p.dim} exceeds {MAX_DIM}")
    if not p.is_full:
        raise DegenerateError("polytope is not full-dimensional")
    return HRep(p.dim, _facets_of_points(p.vertices, p.dim))


def _recession_is_trivial(normals: list, dim: int) -> bool:
    # {y : a.y <= 0 for all a} is {0} iff the normals have full rank and no
    # extreme ray exists; extreme rays are kernels of (dim-1)-subsets
    if int_rank(normals) < dim:
        return False
    if dim == 1:
        return any(a[0] > 0 for a in normals) and any(a[0] < 0 for a in normals)
    for combo in itertools.combinations(normals, dim - 1):
        ray = int_kernel(combo)
        if not any(ray):
            continue
        for sgn in (1, -1):
            if all(sgn * int_dot(a, ray) <= 0 for a in normals):
                return False
    return True


def vertex_enum(h: HRep) -> Polytope:
    """Vertices of a bounded H-rep, by solving every ``dim``-subset of facet equations.

    Raises :class:`UnboundedError` if the halfspaces do not cut out a bounded
    set and :class:`InfeasibleError` if they cut out the empty set.  A
    lower-dimensional (but nonempty) result is returned as a degenerate
    polytope.  For a full-dimensional result the irredundant facets are
    read off the same pass and attached to the polytope.
    """
    d = h.dim
    if d > MAX_DIM:
        raise DimensionError(f"dimension {d} exceeds {MAX_DIM}")
    hs = h.halfspaces
    if not hs or not _recession_is_trivial([x.normal for x in hs], d):
        raise UnboundedError("halfspaces do not bound a polytope")
    rows = [x.row() for x in hs]
    # homogeneous rows [q a | -p]; a vertex (X, w) with x = X / w spans their kernel
    hom = [a + (-p,) for a, p in rows]
    found: dict[tuple, None] = {}
    for combo in itertools.combinations(hom, d):
        k = int_kernel(combo)
        w = k[-1]
        if w == 0:
            continue
        if w < 0:
            k = tuple(-x for x in k)
            w = -w
        g = math.gcd(*k)
        k = tuple(x // g for x in k)
        if k in found:
            continue
        xs, w = k[:-1], k[-1]
        if all(int_dot(a, xs) <= p * w for a, p in rows):
            found[k] = None
    if not found:
        raise InfeasibleError("halfspaces have empty intersection")
    homs = sorted(found, key=lambda k: tuple(Fraction(x, k[-1]) for x in k[:-1]))
    poly = Polytope(d, [tuple(Fraction(x, k[-1]) for x in k[:-1]) for k in homs])
    if poly.is_full:
        facets, incidence = [], []
        for (a, p), half in zip(rows, hs):
            on = frozenset(i for i, k in enumerate(homs) if int_dot(a, k[:-1]) == p * k[-1])
            if len(on) >= d and int_rank([k for i, k in enumerate(homs) if i in on]) == d:
                facets.append(half)
                incidence.append(on)
        poly.__dict__["hrep"] = HRep(d, facets)
        poly.__dict__["incidence"] = incidence
    return poly


def hrep_status(h: HRep) -> str:
    """``"full"``, ``"degenerate"`` or ``"empty"`` for a bounded H-rep."""
    try:
        p = vertex_enum(h)
    except InfeasibleError:
        return "empty"
    return "full" if p.is_full else "degenerate"


def membership(h: HRep, x: Sequence) -> str:
    x = vec(x)
    if len(x) != h.dim:
        raise DimensionError("point and body dimensions differ")
    status = "interior"
    for hs in h.halfspaces:
        v = dot(hs.normal, x)
        if v > hs.offset:
            return "outside"
        if v == hs.offset:
            status = "boundary"
    return status


def check_origin_interior(h: HRep) -> None:
    if not all(hs.offset > 0 for hs in h.halfspaces):
        raise PreconditionError("origin is not strictly interior to the body")


def gauge(h: HRep, z: Sequence) -> Fraction:
    """Minkowski gauge ``min{t >= 0 : z in t K}`` of a body with the origin in its interior."""
    check_origin_interior(h)
    z = vec(z)
    if len(z) != h.dim:
        raise DimensionError("point and body dimensions differ")
    best = Fraction(0)
    for hs in h.halfspaces:
        g = dot(hs.normal, z) / hs.offset
        if g > best:
            best = g
    return best


def clip(h: HRep, hs: HalfSpace) -> HRep:
    """H-rep of ``K intersect H``.  May be empty or flat; see :func:`hrep_status`."""
    if hs.dim != h.dim:
        raise DimensionError("halfspace and body dimensions differ")
    return HRep(h.dim, h.halfspaces + (hs,))


def clip_polytope(p: Polytope, hs: HalfSpace) -> Polytope:
    """Clip and enumerate; an empty intersection gives the empty polytope."""
    den, ipts = p.scaled_vertices
    a, b = hs.row()
    if all(int_dot(a, v) <= b * den for v in ipts):
        return p
    try:
        return vertex_enum(clip(p.hrep, hs))
    except InfeasibleError:
        return Polytope(p.dim, ())


def reflect(p: Polytope) -> Polytope:
    return p.negated()


def intersect(p: Polytope, q: Polytope) -> Polytope:
    """``p`` intersected with ``q``; the empty polytope if they are disjoint."""
    if p.dim != q.dim:
        raise DimensionError("dimensions differ")
    try:
        return vertex_enum(HRep(p.dim, p.hrep.halfspaces + q.hrep.halfspaces))
    except InfeasibleError:
        return Polytope(p.dim, ())


def _cells(p: Polytope) -> list[frozenset]:
    if p.dim > MAX_DIM:
        raise DimensionError(f"dimension {p.dim} exceeds {MAX_DIM}")
    if p.is_empty or not p.is_full:
        raise DegenerateError("cannot triangulate a flat polytope")
    n = len(p.vertices)
    if n == p.dim + 1:
        return [frozenset(range(n))]
    return _fan(frozenset(range(n)), p.dim, p.vertices, p.scaled_vertices[1], p.incidence)


def _fan(face: frozenset, k: int, verts, ipts, incidence) -> list[frozenset]:
    if len(face) == k + 1:
        return [face]
    root = min(face, key=lambda i: verts[i])
    seen = set()
    out = []
    for inc in incidence:
        sub_face = face & inc
        if root in sub_face or len(sub_face) < k or sub_face in seen:
            continue
        if _int_affine_dim([ipts[i] for i in sub_face]) != k - 1:
            continue
        seen.add(sub_face)
        for cell in _fan(sub_face, k - 1, verts, ipts, incidence):
            out.append(cell | {root})
    return out


def triangulate(p: Polytope) -> list[Simplex]:
    """Pulling (fan) triangulation from the lexicographically smallest vertex.

    Recurses through the face lattice: the root is coned over a
    triangulation of every facet that does not contain it.
    """
    return [Simplex(p.dim, sorted(p.vertices[i] for i in cell)) for cell in _cells(p)]


def _cell_dets(p: Polytope) -> list[tuple[frozenset, int]]:
    ipts = p.scaled_vertices[1]
    out = []
    for cell in _cells(p):
        idx = sorted(cell)
        base = ipts[idx[0]]
        edges = [tuple(a - b for a, b in zip(ipts[i], base)) for i in idx[1:]]
        out.append((cell, abs(int_det(edges))))
    return out


def volume(p: Polytope) -> Fraction:
    """Exact volume; a flat or empty polytope has volume 0 (check ``p.is_full``)."""
    if p.is_empty or not p.is_full:
        return Fraction(0)
    den = p.scaled_vertices[0]
    if p.dim == 2:
        return abs(_shoelace(_monotone_chain(p.vertices)))
    total = sum(dt for _, dt in _cell_dets(p))
    return Fraction(total, den**p.dim * math.factorial(p.dim))


def _shoelace(ccw: Sequence[Sequence]) -> Fraction:
    n = len(ccw)
    twice = sum(ccw[i][0] * ccw[(i + 1) % n][1] - ccw[(i + 1) % n][0] * ccw[i][1] for i in range(n))
    return Fraction(twice) / 2


def centroid(p: Polytope) -> tuple:
    """Volume-weighted average of the centroids of a triangulation."""
    if p.is_empty or not p.is_full:
        raise DegenerateError("centroid of a flat polytope")
    d = p.dim
    if len(p.vertices) == d + 1:
        return tuple(sum(c) / (d + 1) for c in zip(*p.vertices))
    den, ipts = p.scaled_vertices
    total = 0
    acc = [0] * d
    for cell, w in _cell_dets(p):
        total += w
        for i in cell:
            for j in range(d):
                acc[j] += w * ipts[i][j]
    return tuple(Fraction(a, total * (d + 1) * den) for a in acc)
