"""Linear maps putting a rational polytope into lattice-face position.

Two stages.  A unit upper-triangular integer shear makes the vertex set
pi-general, then a diagonal integer scaling makes every flat spanned by
vertices project its lattice onto the full lower-dimensional lattice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, count, product
from math import lcm
from typing import Sequence

from . import linalg
from .errors import DegeneratePolytopeError, PreconditionError, SingularMatrixError
from .lattice_face import is_pi_general_position
from .linalg import IntHyperplane
from .polytope import Polytope


@dataclass(frozen=True)
class LinearMap:
    matrix: tuple
    inverse: tuple
    stages: tuple = field(default=())  # (label, matrix) pairs, applied first to last

    @classmethod
    def from_matrix(cls, matrix, label: str | None = None) -> LinearMap:
        m = linalg.mat(matrix)
        stages = ((label, m),) if label else ()
        return cls(m, linalg.inverse(m), stages)

    @classmethod
    def identity(cls, d: int) -> LinearMap:
        m = linalg.identity(d)
        return cls(m, m, ())

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def then(self, other: LinearMap) -> LinearMap:
        """The map x -> other(self(x))."""
        return LinearMap(
            linalg.matmul(other.matrix, self.matrix),
            linalg.matmul(self.inverse, other.inverse),
            self.stages + other.stages,
        )

    def __call__(self, x: Sequence):
        return linalg.matvec(self.matrix, linalg.vec(x))

    def apply_all(self, points):
        return [self(p) for p in points]

    def is_integral(self) -> bool:
        return all(linalg.is_integral(r) for r in self.matrix)


@dataclass(frozen=True)
class ScalingVector:
    c: tuple

    def __post_init__(self):
        if any(x == 0 for x in self.c):
            raise PreconditionError("scaling factors must be nonzero")

    def as_map(self) -> LinearMap:
        d = len(self.c)
        m = tuple(tuple(Fraction(self.c[i]) if i == j else Fraction(0) for j in range(d)) for i in range(d))
        inv = tuple(tuple(Fraction(1, self.c[i]) if i == j else Fraction(0) for j in range(d)) for i in range(d))
        return LinearMap(m, inv, (("diagonal scaling", m),))


def shear_matrix(v: Sequence[int]) -> LinearMap:
    """Unit upper-triangular map with -v_i in the last column, rows 1..d-1."""
    d = len(v)
    if v[-1] != 1:
        raise PreconditionError("last entry of the shear vector must be 1")
    m = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    inv = [row[:] for row in m]
    for i in range(d - 1):
        m[i][d - 1] = Fraction(-v[i])
        inv[i][d - 1] = Fraction(v[i])
    m = tuple(map(tuple, m))
    return LinearMap(m, tuple(map(tuple, inv)), (("shear", m),))


def lift_block(A) -> LinearMap:
    """diag(A, 1)."""
    A = linalg.mat(A)
    k = len(A)
    if linalg.det(A) == 0:
        raise SingularMatrixError("block is singular")
    def lift(block):
        rows = [tuple(r) + (Fraction(0),) for r in block]
        rows.append(tuple(Fraction(0) for _ in range(k)) + (Fraction(1),))
        return tuple(rows)
    m = lift(A)
    return LinearMap(m, lift(linalg.inverse(A)), (("block lift", m),))


def hyperplane_spans(V: Sequence[Sequence]) -> list[IntHyperplane]:
    """Distinct hyperplanes spanned by subsets of V, in discovery order."""
    V = [linalg.vec(v) for v in V]
    d = len(V[0])
    found: dict[IntHyperplane, frozenset] = {}
    for subset in combinations(range(len(V)), d):
        if any(members.issuperset(subset) for members in found.values()):
            continue
        pts = [V[i] for i in subset]
        if not linalg.affinely_independent(pts):
            continue
        h = linalg.hyperplane_equation(pts)
        if h not in found:
            found[h] = frozenset(i for i, v in enumerate(V) if h.value(v) == 0)
    return list(found)


def choose_avoiding_vector(normals: Sequence[Sequence[int]], d: int | None = None) -> tuple:
    """First integer v with last entry 1 and v . n != 0 for every normal.

    Candidates run over growing max-norm R = 0, 1, 2, ... and, within a
    norm, lexicographically over the first d-1 coordinates in -R..R.
    """
    if d is None:
        d = len(normals[0])
    if any(all(x == 0 for x in n) for n in normals):
        raise PreconditionError("zero normal vector")
    for R in count():
        for head in product(range(-R, R + 1), repeat=d - 1):
            if head and max(abs(x) for x in head) != R:
                continue
            v = head + (1,)
            if all(sum(a * b for a, b in zip(v, n)) != 0 for n in normals):
                return v
        if d == 1:
            # Only candidate is (1,), which fails only for a zero normal.
            raise PreconditionError("no avoiding vector in dimension 1")


def _dedupe(points):
    return list(dict.fromkeys(linalg.vec(p) for p in points))


def to_pi_general_position(V: Sequence[Sequence]) -> tuple[LinearMap, list]:
    """Unimodular unit upper-triangular map sending V into pi-general position."""
    V = _dedupe(V)
    d = len(V[0])
    if linalg.affine_dimension(V) != d:
        raise DegeneratePolytopeError("points do not affinely span the ambient space")
    phi = _general_position_map(V)
    return phi, phi.apply_all(V)


def _general_position_map(V) -> LinearMap:
    d = len(V[0])
    if d == 1:
        return LinearMap.identity(1)
    normals = [h.alpha for h in hyperplane_spans(V)]
    v = choose_avoiding_vector(normals, d)
    phi0 = shear_matrix(v)
    sheared = phi0.apply_all(V)
    A = _general_position_map(_dedupe(p[:-1] for p in sheared))
    lifted = lift_block(A.matrix)
    lifted = LinearMap(lifted.matrix, lifted.inverse, _lift_stages(A.stages))
    return phi0.then(lifted)


def _lift_stages(stages):
    out = []
    for label, m in stages:
        k = len(m)
        rows = [tuple(r) + (Fraction(0),) for r in m]
        rows.append(tuple(Fraction(0) for _ in range(k)) + (Fraction(1),))
        out.append((f"{label} (lifted from R^{k})", tuple(rows)))
    return tuple(out)


def facet_scaling_factor(U: Sequence[Sequence]) -> int:
    """Last coefficient of the primitive equation of aff(U)."""
    h = linalg.hyperplane_equation(U)
    if h.alpha[-1] == 0:
        raise PreconditionError("the span projects to a lower-dimensional set")
    return h.alpha[-1]


def to_lattice_face_scaling(V: Sequence[Sequence]) -> ScalingVector:
    """Nonzero integers c with diag(c) sending a pi-general set to lattice-face position."""
    V = _dedupe(V)
    if not is_pi_general_position(V):
        raise PreconditionError("points are not in pi-general position")
    return ScalingVector(tuple(_scaling(V)))


def _scaling(V) -> list[int]:
    d = len(V[0])
    if d == 1:
        return [linalg.denominator_lcm(v[0] for v in V)]
    head = _scaling(_dedupe(v[:-1] for v in V))
    scaled = [tuple(c * x for c, x in zip(head, v[:-1])) + (v[-1],) for v in V]
    c_last = 1
    for h in hyperplane_spans(scaled):
        if h.alpha[-1] == 0:
            raise PreconditionError("the span projects to a lower-dimensional set")
        c_last = lcm(c_last, abs(h.alpha[-1]))
    return head + [c_last]


def make_lattice_face(P: Polytope) -> tuple[LinearMap, Polytope]:
    """An invertible linear map phi with phi(P) lattice-face, and phi(P)."""
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError(
            f"polytope has affine dimension {P.affine_dim} in R^{P.dim}"
        )
    shear, moved = to_pi_general_position(P.vertices)
    scaling = to_lattice_face_scaling(moved)
    phi = shear.then(scaling.as_map())
    return phi, Polytope(phi.apply_all(P.vertices))
