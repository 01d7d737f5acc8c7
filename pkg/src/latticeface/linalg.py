"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
such rows.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotAHyperplaneError,
    SingularMatrixError,
)

Vector = tuple  # tuple[Fraction, ...]
Matrix = tuple  # tuple[Vector, ...]


def vec(values: Iterable) -> Vector:
    """Coerce ints, strings like ``"3/4"`` or Fractions into a rational vector."""
    return tuple(Fraction(v) for v in values)


def mat(rows: Iterable[Iterable]) -> Matrix:
    rows = tuple(vec(r) for r in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise DimensionMismatchError("matrix rows have different lengths")
    return rows


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionMismatchError(f"length {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vector:
    return tuple(c * a for a in v)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    if a and len(a[0]) != len(b):
        raise DimensionMismatchError("inner dimensions differ")
    cols = transpose(b)
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def matvec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def is_integral(v: Iterable) -> bool:
    return all(Fraction(x).denominator == 1 for x in v)


def denominator_lcm(values: Iterable) -> int:
    out = 1
    for x in values:
        out = lcm(out, Fraction(x).denominator)
    return out


def primitive(v: Sequence) -> tuple[int, ...]:
    """Smallest integer vector that is a positive multiple of ``v``."""
    l = denominator_lcm(v)
    ints = [int(Fraction(x) * l) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def rref(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = [[Fraction(x) for x in r] for r in m]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: Sequence[Sequence]) -> int:
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(m[0])
    rows, pivots = rref(m) if m else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(pivots):
            x[p] = -rows[i][f]
        basis.append(tuple(x))
    return basis


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatchError("determinant of a non-square matrix")
    rows = [[Fraction(x) for x in r] for r in m]
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def solve(a: Sequence[Sequence], b: Sequence) -> Vector:
    """Unique solution of a x = b for square invertible ``a``."""
    n = len(a)
    if any(len(r) != n for r in a) or len(b) != n:
        raise DimensionMismatchError("solve needs a square system")
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    rows, pivots = rref(aug)
    if pivots != list(range(n)):
        raise SingularMatrixError("system matrix is singular")
    return tuple(rows[i][n] for i in range(n))


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionMismatchError("inverse of a non-square matrix")
    aug = [list(r) + list(e) for r, e in zip(m, identity(n))]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(rows[i][n:]) for i in range(n))


class AffineHull(NamedTuple):
    dim: int
    basis: list
    base_point: Vector


def solve_affine(points: Sequence[Sequence]) -> AffineHull:
    """Dimension of aff(points) with a base point and independent directions.

    Directions are chosen greedily among ``p - points[0]`` so they stay
    recognisable (``{(0,0), (3,1)}`` gives direction ``(3, 1)``).
    """
    if not points:
        raise EmptyInputError("affine hull of an empty set")
    pts = [vec(p) for p in points]
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise DimensionMismatchError("points of different ambient dimension")
    base = pts[0]
    basis = []
    echelon: list[tuple[int, list[Fraction]]] = []
    for p in pts[1:]:
        diff = sub(p, base)
        reduced = _reduce(list(diff), echelon)
        if reduced is not None:
            echelon.append(reduced)
            basis.append(diff)
            if len(basis) == n:
                break
    return AffineHull(len(basis), basis, base)


def _reduce(v: list, echelon: list) -> tuple[int, list] | None:
    # Eliminate against an echelon basis; returns the new (pivot, row) or None if dependent.
    for pc, row in echelon:
        if v[pc] != 0:
            f = v[pc]
            v = [x - f * y for x, y in zip(v, row)]
    pc = next((i for i, x in enumerate(v) if x != 0), None)
    if pc is None:
        return None
    p = v[pc]
    return pc, [x / p for x in v]


def affine_dimension(points: Sequence[Sequence]) -> int:
    return solve_affine(points).dim


def affinely_independent(points: Sequence[Sequence]) -> bool:
    return affine_dimension(points) == len(points) - 1


def affine_basis_indices(points: Sequence[Sequence]) -> list[int]:
    """Indices of a greedily chosen affinely independent subset spanning aff(points)."""
    pts = [vec(p) for p in points]
    if not pts:
        raise EmptyInputError("affine hull of an empty set")
    chosen = [0]
    echelon: list = []
    for i in range(1, len(pts)):
        reduced = _reduce(list(sub(pts[i], pts[0])), echelon)
        if reduced is not None:
            echelon.append(reduced)
            chosen.append(i)
    return chosen


@dataclass(frozen=True)
class IntHyperplane:
    """The set {x : alpha . x == a} with integer data."""

    alpha: tuple
    a: int

    @property
    def dim(self) -> int:
        return len(self.alpha)

    def value(self, x: Sequence) -> Fraction:
        """alpha . x - a; zero exactly on the hyperplane."""
        return sum((ai * Fraction(xi) for ai, xi in zip(self.alpha, x)), Fraction(0)) - self.a

    def negated(self) -> IntHyperplane:
        return IntHyperplane(tuple(-x for x in self.alpha), -self.a)

    def canonical(self) -> IntHyperplane:
        first = next(x for x in self.alpha if x != 0)
        return self if first > 0 else self.negated()


def hyperplane_equation(points: Sequence[Sequence]) -> IntHyperplane:
    """Primitive integer equation of the hyperplane spanned by ``points``.

    The first nonzero entry of alpha is positive.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise EmptyInputError("no points")
    d = len(pts[0])
    if affine_dimension(pts) != d - 1:
        raise NotAHyperplaneError(f"points do not span a {d - 1}-dimensional affine space")
    # (alpha, -a) spans the null space of the rows (p, 1).
    ns = nullspace([list(p) + [Fraction(1)] for p in pts], d + 1)
    coeffs = primitive(ns[0])
    h = IntHyperplane(tuple(coeffs[:d]), -coeffs[d])
    return h.canonical()
