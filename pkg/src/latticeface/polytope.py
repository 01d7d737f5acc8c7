"""Rational polytopes given by generating points.

Vertices come from exact LP feasibility, facets from brute force over
d-subsets of vertices.  Both are computed once and cached.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil, factorial, floor
from typing import Iterable, Iterator, Sequence

from . import linalg, lp
from .errors import DegeneratePolytopeError, DimensionMismatchError, EmptyInputError, PreconditionError
from .linalg import IntHyperplane, Vector


class FacetSign(IntEnum):
    NEGATIVE = -1
    VERTICAL = 0
    POSITIVE = 1


@dataclass(frozen=True)
class Facet:
    hyperplane: IntHyperplane  # outward: alpha . x <= a holds on the polytope
    incident_vertices: frozenset
    sign: FacetSign


def extract_vertices(points: Sequence[Sequence]) -> list[Vector]:
    """Extreme points of conv(points), in input order, duplicates removed."""
    if not points:
        raise EmptyInputError("no points")
    pts = list(dict.fromkeys(linalg.vec(p) for p in points))
    if len(pts) == 1:
        return pts
    keep = []
    for i, x in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        # x is redundant iff sum(l_j p_j) = x, sum(l_j) = 1, l >= 0 is feasible
        a_eq = [[p[c] for p in others] for c in range(len(x))]
        a_eq.append([1] * len(others))
        b_eq = list(x) + [1]
        if lp.feasible_point(a_eq, b_eq) is None:
            keep.append(x)
    return keep


class Polytope:
    """conv(points) in R^dim with exact rational coordinates."""

    def __init__(self, points: Iterable[Sequence]):
        self.points = tuple(linalg.vec(p) for p in points)
        if not self.points:
            raise EmptyInputError("a polytope needs at least one point")
        self.dim = len(self.points[0])
        if any(len(p) != self.dim for p in self.points):
            raise DimensionMismatchError("points of different ambient dimension")
        self.vertices = tuple(extract_vertices(self.points))

    def __repr__(self):
        verts = ", ".join("(" + ",".join(str(x) for x in v) + ")" for v in self.vertices)
        return f"Polytope(dim={self.dim}, vertices=[{verts}])"

    @cached_property
    def affine_dim(self) -> int:
        return linalg.affine_dimension(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    @cached_property
    def facets(self) -> tuple:
        return tuple(compute_facets(self))

    def scaled(self, m) -> Polytope:
        return Polytope(linalg.scale(Fraction(m), v) for v in self.vertices)

    def transformed(self, matrix) -> Polytope:
        return Polytope(linalg.matvec(matrix, v) for v in self.vertices)

    def is_integral(self) -> bool:
        return all(linalg.is_integral(v) for v in self.vertices)


def _require_full(P: Polytope):
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError(
            f"polytope has affine dimension {P.affine_dim} in R^{P.dim}"
        )


def compute_facets(P: Polytope) -> list[Facet]:
    _require_full(P)
    V = P.vertices
    if P.dim == 0:
        return []
    found: dict[IntHyperplane, Facet] = {}
    for subset in combinations(range(len(V)), P.dim):
        # Skip subsets already lying on a known facet hyperplane.
        if any(subset[0] in f.incident_vertices and f.incident_vertices.issuperset(subset)
               for f in found.values()):
            continue
        pts = [V[i] for i in subset]
        if not linalg.affinely_independent(pts):
            continue
        h = linalg.hyperplane_equation(pts)
        values = [h.value(v) for v in V]
        if all(x <= 0 for x in values):
            outward = h
        elif all(x >= 0 for x in values):
            outward = h.negated()
        else:
            continue
        if outward in found:
            continue
        incident = frozenset(i for i, x in enumerate(values) if x == 0)
        last = outward.alpha[-1]
        sign = FacetSign.POSITIVE if last > 0 else FacetSign.NEGATIVE if last < 0 else FacetSign.VERTICAL
        found[outward] = Facet(outward, incident, sign)
    return list(found.values())


def contains(P: Polytope, x: Sequence) -> bool:
    if len(x) != P.dim:
        raise DimensionMismatchError(f"point of length {len(x)} in R^{P.dim}")
    return all(f.hyperplane.value(x) <= 0 for f in P.facets)


def project(P: Polytope, j: int = 1) -> Polytope:
    """Image under the map forgetting the last ``j`` coordinates."""
    if not 0 <= j <= P.dim:
        raise PreconditionError(f"cannot drop {j} coordinates in R^{P.dim}")
    if j == 0:
        return P
    return Polytope(v[:P.dim - j] for v in P.vertices)


def fiber(P: Polytope, y: Sequence):
    """Lowest and highest point of P over ``y``, or ``None`` if y is not in pi(P)."""
    d = P.dim
    if d == 0 or len(y) != d - 1:
        raise DimensionMismatchError(f"fiber over a point of length {len(y)} in R^{d}")
    y = linalg.vec(y)
    lo = hi = None
    for f in P.facets:
        alpha, a = f.hyperplane.alpha, f.hyperplane.a
        rest = a - sum((ai * yi for ai, yi in zip(alpha, y)), Fraction(0))
        last = alpha[-1]
        if last == 0:
            if rest < 0:
                return None
        elif last > 0:
            bound = rest / last
            hi = bound if hi is None or bound < hi else hi
        else:
            bound = rest / last
            lo = bound if lo is None or bound > lo else lo
    if lo is None or hi is None or lo > hi:
        return None
    return y + (lo,), y + (hi,)


def satisfies_unique_boundary_fiber(P: Polytope) -> bool:
    return all(f.sign != FacetSign.VERTICAL for f in P.facets)


def volume(P: Polytope) -> Fraction:
    if P.dim == 0:
        return Fraction(1)
    if not P.is_full_dimensional:
        return Fraction(0)
    return sum((s.volume for s in pulling_triangulation(P).simplices), Fraction(0))


@dataclass(frozen=True)
class Simplex:
    vertices: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(linalg.vec(v) for v in self.vertices))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @cached_property
    def signed_det(self) -> Fraction:
        base = self.vertices[0]
        return linalg.det([linalg.sub(v, base) for v in self.vertices[1:]])

    @property
    def volume(self) -> Fraction:
        return abs(self.signed_det) / factorial(self.dim)

    def polytope(self) -> Polytope:
        return Polytope(self.vertices)


@dataclass
class Triangulation:
    simplices: list
    steiner_points: list = field(default_factory=list)


def pulling_triangulation(P: Polytope, apex_order: Sequence[int] | None = None) -> Triangulation:
    """Recursively cone the earliest vertex (in ``apex_order``) over the far facets.

    ``apex_order`` may be partial; missing vertex indices follow in their
    natural order.
    """
    _require_full(P)
    V = P.vertices
    n = len(V)
    order = list(apex_order or [])
    order += [i for i in range(n) if i not in order]
    rank = {v: r for r, v in enumerate(order)}
    facet_sets = [f.incident_vertices for f in P.facets]
    dims: dict[frozenset, int] = {}

    def face_dim(S):
        if S not in dims:
            dims[S] = linalg.affine_dimension([V[i] for i in S])
        return dims[S]

    def triangulate(S: frozenset, k: int) -> list[tuple]:
        if len(S) == k + 1:
            return [tuple(sorted(S, key=rank.__getitem__))]
        apex = min(S, key=rank.__getitem__)
        subfaces = []
        for F in facet_sets:
            G = S & F
            if apex in G or G in subfaces or len(G) < k:
                continue
            if face_dim(G) == k - 1:
                subfaces.append(G)
        out = []
        for G in subfaces:
            out.extend((apex,) + s for s in triangulate(G, k - 1))
        return out

    cells = triangulate(frozenset(range(n)), P.dim)
    return Triangulation([Simplex([V[i] for i in c]) for c in cells])


def triangulation_problems(P: Polytope, T: Triangulation) -> list[str]:
    """Reasons why ``T`` is not a triangulation of ``P`` (empty when it is)."""
    problems = []
    d = P.dim
    for i, s in enumerate(T.simplices):
        if len(s.vertices) != d + 1 or s.dim != d:
            problems.append(f"simplex {i} does not have {d + 1} points in R^{d}")
            return problems
        if s.signed_det == 0:
            problems.append(f"simplex {i} is degenerate")
        elif not all(contains(P, v) for v in s.vertices):
            problems.append(f"simplex {i} is not contained in the polytope")
    if problems:
        return problems
    total = sum((s.volume for s in T.simplices), Fraction(0))
    if total != volume(P):
        problems.append(f"simplex volumes sum to {total}, polytope volume is {volume(P)}")
        return problems
    for i, j in combinations(range(len(T.simplices)), 2):
        if interiors_overlap(T.simplices[i], T.simplices[j]):
            problems.append(f"simplices {i} and {j} overlap")
    return problems


def validate_triangulation(P: Polytope, T: Triangulation) -> bool:
    return not triangulation_problems(P, T)


def interiors_overlap(s: Simplex, t: Simplex) -> bool:
    # Fast path: a facet hyperplane of either simplex weakly separates them.
    for a, b in ((s, t), (t, s)):
        for f in a.polytope().facets:
            if all(f.hyperplane.value(v) >= 0 for v in b.vertices):
                return False
    # Exact test: maximise r with x = sum (r + u_i) s_i = sum (r + w_j) t_j,
    # each barycentric weight summing to 1; interiors meet iff the optimum is positive.
    d = s.dim
    k = d + 1
    rows, rhs = [], []
    for c in range(d):
        r_coef = sum(v[c] for v in s.vertices) - sum(v[c] for v in t.vertices)
        rows.append([r_coef] + [v[c] for v in s.vertices] + [-v[c] for v in t.vertices])
        rhs.append(0)
    rows.append([k] + [1] * k + [0] * k)
    rhs.append(1)
    rows.append([k] + [0] * k + [1] * k)
    rhs.append(1)
    result = lp.maximize([1] + [0] * (2 * k), rows, rhs)
    return result is not None and result[0] > 0


def lattice_points(P: Polytope) -> Iterator[tuple]:
    """All integer points of P in lexicographic order, by recursion over fibers."""
    if P.dim == 0:
        yield ()
        return
    base = project(P, 1)
    for y in lattice_points(base):
        f = fiber(P, y)
        if f is None:
            continue
        lo, hi = f[0][-1], f[1][-1]
        for t in range(ceil(lo), floor(hi) + 1):
            yield y + (t,)


def faces(P: Polytope) -> dict[int, list[frozenset]]:
    """All nonempty faces as vertex-index sets, keyed by dimension."""
    _require_full(P)
    n = len(P.vertices)
    found = {frozenset(range(n))}
    frontier = {f.incident_vertices for f in P.facets}
    facet_sets = list(frontier)
    while frontier:
        found |= frontier
        nxt = set()
        for S in frontier:
            for F in facet_sets:
                G = S & F
                if G and G not in found:
                    nxt.add(G)
        frontier = nxt
    out: dict[int, list[frozenset]] = {}
    for S in found:
        k = linalg.affine_dimension([P.vertices[i] for i in S])
        out.setdefault(k, []).append(S)
    for k in out:
        out[k].sort(key=sorted)
    return dict(sorted(out.items()))


class LatticeMultiset:
    """Integer points with integer (possibly negative) multiplicities."""

    def __init__(self, items=None):
        self._mult: dict[tuple, int] = {}
        for x, m in dict(items or {}).items():
            if m:
                self._mult[tuple(x)] = m

    @classmethod
    def from_points(cls, points: Iterable, multiplicity: int = 1) -> LatticeMultiset:
        out = cls()
        for x in points:
            out._add(tuple(x), multiplicity)
        return out

    def _add(self, x, m):
        total = self._mult.get(x, 0) + m
        if total:
            self._mult[x] = total
        else:
            self._mult.pop(x, None)

    def __getitem__(self, x) -> int:
        return self._mult.get(tuple(x), 0)

    def __len__(self):
        return len(self._mult)

    def __iter__(self):
        return iter(self._mult)

    def items(self):
        return self._mult.items()

    def __eq__(self, other):
        return isinstance(other, LatticeMultiset) and self._mult == other._mult

    def __add__(self, other: LatticeMultiset) -> LatticeMultiset:
        return multiset_combine([(self, 1), (other, 1)])

    def __sub__(self, other: LatticeMultiset) -> LatticeMultiset:
        return multiset_combine([(self, 1), (other, -1)])

    def __mul__(self, k: int) -> LatticeMultiset:
        return multiset_combine([(self, k)])

    __rmul__ = __mul__

    def __repr__(self):
        return f"LatticeMultiset({dict(sorted(self._mult.items()))})"


def multiset_combine(terms: Iterable[tuple[LatticeMultiset, int]]) -> LatticeMultiset:
    out = LatticeMultiset()
    for ms, k in terms:
        for x, m in ms.items():
            out._add(x, k * m)
    return out
