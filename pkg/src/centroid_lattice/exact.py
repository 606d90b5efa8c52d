"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always in lowest terms with a
positive denominator).  Vectors are tuples of Fractions and matrices are
tuples of row tuples.  Nothing in here touches floating point.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[tuple[Fraction, ...], ...]

Number = Union[int, Fraction, str]


class DimensionError(ValueError):
    pass


class Singular(Exception):
    """Raised by :func:`solve_linear` when the system matrix has determinant 0."""


def Q(x: Number) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def qstr(x: Number) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vec(xs: Iterable[Number]) -> RatVector:
    return tuple(Q(x) for x in xs)


def mat(rows: Iterable[Iterable[Number]]) -> RatMatrix:
    m = tuple(vec(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise DimensionError("ragged matrix")
    return m


def shape(m: Sequence[Sequence]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def add(u: Sequence, v: Sequence) -> RatVector:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> RatVector:
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> RatVector:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> RatVector:
    return tuple(-a for a in u)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"length mismatch {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), 0)


def transpose(m: Sequence[Sequence]) -> RatMatrix:
    return tuple(zip(*m))


def matvec(m: Sequence[Sequence], v: Sequence) -> RatVector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMatrix:
    if shape(a)[1] != shape(b)[0]:
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def identity(n: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def is_integral(xs) -> bool:
    """True if every entry of a scalar, vector or matrix is an integer."""
    if isinstance(xs, (int, Fraction)):
        return Fraction(xs).denominator == 1
    return all(is_integral(x) for x in xs)


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Bareiss fraction-free elimination.

    Rational input is first scaled to integers row by row, so all the
    elimination work happens on Python ints.
    """
    n, k = shape(m)
    if n != k:
        raise DimensionError(f"determinant of non-square {n}x{k} matrix")
    if n == 0:
        return Fraction(1)
    rows = []
    denom = 1
    for row in m:
        row = [Q(x) for x in row]
        l = lcm(*(x.denominator for x in row))
        denom *= l
        rows.append([int(x * l) for x in row])
    return Fraction(_bareiss(rows), denom)


def _bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def solve_linear(a: Sequence[Sequence], b: Sequence) -> RatVector:
    """Solve ``a @ x = b`` exactly by Gauss-Jordan elimination.

    Raises :class:`Singular` when ``a`` is singular.
    """
    n, k = shape(a)
    if n != k:
        raise DimensionError(f"system matrix must be square, got {n}x{k}")
    if len(b) != n:
        raise DimensionError(f"right-hand side has length {len(b)}, expected {n}")
    aug = [[Q(x) for x in row] + [Q(bi)] for row, bi in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        prow = [x / p for x in aug[col]]
        aug[col] = prow
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], prow)]
    return tuple(row[n] for row in aug)


def inverse(a: Sequence[Sequence]) -> RatMatrix:
    n, k = shape(a)
    if n != k:
        raise DimensionError("inverse of non-square matrix")
    cols = [solve_linear(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def rank(m: Sequence[Sequence]) -> int:
    rows = [[Q(x) for x in row] for row in m]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            if rows[i][col] != 0:
                f = rows[i][col] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def is_unimodular(m: Sequence[Sequence]) -> bool:
    """Integer square matrix with determinant +1 or -1."""
    n, k = shape(m)
    if n != k:
        return False
    return is_integral(m) and abs(det(m)) == 1


def cofactor_normal(points: Sequence[Sequence]) -> RatVector:
    """Normal vector of the affine hyperplane through ``d`` points in R^d.

    Computed as the generalized cross product of the edge vectors, so the
    result is the zero vector exactly when the points are affinely dependent.
    """
    d = len(points[0])
    if len(points) != d:
        raise DimensionError(f"need {d} points in dimension {d}")
    base = points[0]
    edges = [sub(p, base) for p in points[1:]]
    normal = []
    for i in range(d):
        minor = [[e[j] for j in range(d) if j != i] for e in edges]
        normal.append((-1) ** i * det(minor))
    return tuple(normal)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector in its direction."""
    from math import gcd

    v = [Q(x) for x in v]
    l = lcm(*(x.denominator for x in v))
    ints = [int(x * l) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in ints)


# Integer kernels for the geometry hot paths.  These take and return Python
# ints only.


def int_det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = m
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return _bareiss([list(r) for r in m])


def int_kernel(rows: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Cofactor vector spanning the kernel of an ``(n-1) x n`` integer matrix.

    All zeros exactly when the rows are linearly dependent.
    """
    n = len(rows) + 1
    out = []
    for j in range(n):
        minor = [[r[k] for k in range(n) if k != j] for r in rows]
        c = int_det(minor)
        out.append(-c if j % 2 else c)
    return tuple(out)


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    a = [list(r) for r in rows]
    if not a:
        return 0
    r = 0
    for col in range(len(a[0])):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][col]
        for i in range(r + 1, len(a)):
            f = a[i][col]
            if f:
                a[i] = [x * p - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def int_dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(map(operator.mul, u, v))
