"""Lattice-face and pi-general-position predicates, the nonnegative part,
and the search for triangulations into lattice-face simplices.

Both predicates scan vertex subsets in a fixed order: by flat dimension
``k`` first, then lexicographically by vertex index.  A subset spanning a
``k``-flat can always be replaced by an affinely independent
``(k+1)``-subset with the same span, so only those are visited.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, islice
from math import floor
from typing import Sequence

from . import counting, linalg
from .errors import (
    DegeneratePolytopeError,
    InvalidTriangulationError,
    PreconditionError,
    VerticalFacetError,
)
from .polytope import (
    Polytope,
    Triangulation,
    contains,
    fiber,
    lattice_points,
    project,
    pulling_triangulation,
    satisfies_unique_boundary_fiber,
    triangulation_problems,
)

DROPS_DIMENSION = "projection-drops-dimension"
NOT_ONTO = "lattice-not-onto"


@dataclass(frozen=True)
class FlatWitness:
    subset: tuple  # vertex indices
    k: int
    passed: bool
    reason: str | None = None


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: FlatWitness | None = None

    def __bool__(self):
        return self.ok


def graph_map(points: Sequence[Sequence], k: int | None = None):
    """Write aff(points) as the graph of y -> C y + e over its first k coordinates.

    Returns ``(C, e)`` with C a (d-k) x k matrix, or ``None`` when dropping
    the last d-k coordinates loses dimension.
    """
    hull = linalg.solve_affine(points)
    if k is None:
        k = hull.dim
    elif hull.dim != k:
        raise PreconditionError(f"points span a {hull.dim}-flat, expected {k}")
    d = len(hull.base_point)
    if k > d - 1:
        raise PreconditionError(f"a {k}-flat in R^{d} is not proper")
    b = hull.base_point
    top = [[v[i] for v in hull.basis] for i in range(k)]
    bottom = [[v[i] for v in hull.basis] for i in range(k, d)]
    if k:
        if linalg.det(top) == 0:
            return None
        top_inv = linalg.inverse(top)
        C = linalg.matmul(bottom, top_inv)
    else:
        C = tuple(() for _ in range(d - k))
    e = tuple(b[k + i] - linalg.dot(C[i], b[:k]) for i in range(d - k))
    return C, e


def lattice_projects_onto(points: Sequence[Sequence], d: int | None = None, k: int | None = None) -> bool:
    """True iff dropping the last d-k coordinates maps the lattice points of
    aff(points) onto Z^k, where k = dim aff(points).

    The point of the flat over y in Z^k is (y, C y + e), so this holds
    exactly when C and e are integral.
    """
    if d is not None and points and len(points[0]) != d:
        raise PreconditionError(f"points are not in R^{d}")
    gm = graph_map(points, k)
    if gm is None:
        return False
    C, e = gm
    return linalg.is_integral(e) and all(linalg.is_integral(row) for row in C)


def _scan(V, check) -> Verdict:
    d = len(V[0])
    for k in range(d):
        for subset in combinations(range(len(V)), k + 1):
            pts = [V[i] for i in subset]
            if k and not linalg.affinely_independent(pts):
                continue
            reason = check(pts, k)
            if reason is not None:
                return Verdict(False, FlatWitness(subset, k, False, reason))
    return Verdict(True)


def _general_position_reason(pts, k):
    return DROPS_DIMENSION if graph_map(pts, k) is None else None


def _lattice_face_reason(pts, k):
    gm = graph_map(pts, k)
    if gm is None:
        return DROPS_DIMENSION
    C, e = gm
    if not (linalg.is_integral(e) and all(linalg.is_integral(row) for row in C)):
        return NOT_ONTO
    return None


def is_pi_general_position(V: Sequence[Sequence]) -> Verdict:
    V = [linalg.vec(v) for v in dict.fromkeys(tuple(v) for v in V)]
    if not V or linalg.affine_dimension(V) != len(V[0]):
        return Verdict(False)
    return _scan(V, _general_position_reason)


def is_lattice_face(P: Polytope) -> Verdict:
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError("lattice-face is defined for full-dimensional polytopes")
    if P.dim == 0:
        return Verdict(True)
    return _scan(P.vertices, _lattice_face_reason)


def omega_membership(P: Polytope, x: Sequence) -> bool:
    """Is x in the nonnegative part, i.e. in P but not the bottom of its fiber?"""
    x = linalg.vec(x)
    if not contains(P, x):
        return False
    if P.dim == 1:
        return x[0] != min(v[0] for v in P.vertices)
    return x != fiber(P, x[:-1])[0]


def count_omega_lattice_points(P: Polytope) -> int:
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError("need a full-dimensional polytope")
    return counting.count_omega_points(P)


def negative_boundary_lattice_points(P: Polytope) -> list[tuple]:
    """Integral fiber minima n(y, P) over the lattice points y of pi(P)."""
    if not satisfies_unique_boundary_fiber(P):
        raise VerticalFacetError("polytope has a vertical facet")
    if P.dim == 1:
        lo = min(v[0] for v in P.vertices)
        return [(int(lo),)] if lo.denominator == 1 else []
    out = []
    for y in lattice_points(project(P, 1)):
        n = fiber(P, y)[0]
        if linalg.is_integral(n):
            out.append(tuple(int(c) for c in n))
    return out


def find_lattice_face_triangulation(P: Polytope, witness: Triangulation | None = None) -> Triangulation | None:
    """A triangulation of P into lattice-face simplices, or ``None``.

    A supplied witness (Steiner points allowed) is validated first and an
    invalid one raises :class:`InvalidTriangulationError`.  Without a usable
    witness, pulling triangulations from each single apex are tried in order.
    """
    if not P.is_full_dimensional:
        raise DegeneratePolytopeError("need a full-dimensional polytope")
    if witness is not None:
        problems = triangulation_problems(P, witness)
        if problems:
            raise InvalidTriangulationError("; ".join(problems))
        if all(is_lattice_face(s.polytope()) for s in witness.simplices):
            return witness
    for T in vertex_triangulations(P):
        if all(is_lattice_face(s.polytope()) for s in T.simplices):
            return T
    return None


def vertex_triangulations(P: Polytope) -> list[Triangulation]:
    """Distinct single-apex pulling triangulations of P, in apex order."""
    out, seen = [], set()
    for apex in range(len(P.vertices)):
        T = pulling_triangulation(P, [apex])
        key = frozenset(frozenset(s.vertices) for s in T.simplices)
        if key not in seen:
            seen.add(key)
            out.append(T)
    return out


def omega_additivity_defects(P: Polytope, pieces: Sequence[Polytope], limit: int = 10) -> list[tuple]:
    """Lattice points x where sum_i [x in Omega(P_i)] != [x in Omega(P)].

    Returns up to ``limit`` triples ``(x, lhs, rhs)``.  Every lattice point
    of the bounding box of P is covered: points outside P lie outside every
    piece (pieces are assumed contained in P), and inside P the columns are
    checked per affine segment.  On a segment where the pieces' fibers chain
    exactly (bottom of P, top of piece 1 = bottom of piece 2, ..., top of P)
    as affine functions, the identity holds at every integer there, since
    flooring preserves the chain; other segments are checked point by point.
    """
    if P.dim == 1:
        return _segment_defects(P, pieces, limit)
    outer = counting.Slicer(P)
    slicers = [counting.Slicer(Q) for Q in pieces]
    defects: list[tuple] = []
    for col in outer.columns():
        cols = [s.column(col.z) for s in slicers]
        cuts = {col.t0, col.t1 + 1}
        cuts.update(p[0] for p in col.top)
        cuts.update(p[0] for p in col.bottom)
        for c in cols:
            if c is not None:
                cuts.update((c.t0, c.t1 + 1))
                cuts.update(p[0] for p in c.top)
                cuts.update(p[0] for p in c.bottom)
        cuts = sorted(x for x in cuts if col.t0 <= x <= col.t1 + 1)
        for start, stop in zip(cuts, cuts[1:]):
            end = stop - 1
            lines = _lines_at(col, start)
            piece_lines = [_lines_at(c, start) for c in cols if c is not None and c.t0 <= start <= c.t1]
            if end > start and _chains(lines, piece_lines):
                continue
            for t in range(start, end + 1):
                _check_point(col.z, t, lines, piece_lines, defects, limit)
                if len(defects) >= limit:
                    return defects
    return defects


def _lines_at(col, t):
    top = next(p[2] for p in col.top if p[0] <= t <= p[1])
    bottom = next(p[2] for p in col.bottom if p[0] <= t <= p[1])
    return bottom, top


def _same_line(l1, l2) -> bool:
    return l1[0] * l2[2] == l2[0] * l1[2] and l1[1] * l2[2] == l2[1] * l1[2]


def _chains(lines, piece_lines) -> bool:
    live = [(b, t) for b, t in piece_lines if not _same_line(b, t)]
    remaining = list(live)
    current = lines[0]
    while remaining:
        nxt = next((i for i, (b, _) in enumerate(remaining) if _same_line(b, current)), None)
        if nxt is None:
            return False
        current = remaining.pop(nxt)[1]
    return _same_line(current, lines[1])


def _check_point(z, t, lines, piece_lines, defects, limit):
    def interval(pair):
        b, top = pair
        return floor(counting.line_value(b, t)), floor(counting.line_value(top, t))

    lo, hi = interval(lines)
    for s, lhs, rhs in _interval_defects(lo, hi, [interval(p) for p in piece_lines]):
        defects.append((tuple(z) + (t, s), lhs, rhs))
        if len(defects) >= limit:
            return


def _interval_defects(lo, hi, intervals):
    """Yield (s, lhs, rhs) for each integer s where the half-open intervals
    (a, b] fail to tile (lo, hi] exactly once."""
    events: dict[int, int] = {}
    for a, b in intervals:
        if b > a:
            events[a] = events.get(a, 0) + 1
            events[b] = events.get(b, 0) - 1
    if hi > lo:
        events[lo] = events.get(lo, 0) - 1
        events[hi] = events.get(hi, 0) + 1
    level = 0
    keys = sorted(events)
    for start, stop in zip(keys, keys[1:]):
        level += events[start]
        if level != 0:
            for s in range(start + 1, stop + 1):
                rhs = 1 if lo < s <= hi else 0
                yield s, rhs + level, rhs


def _segment_defects(P, pieces, limit):
    def interval(Q):
        xs = [v[0] for v in Q.vertices]
        return floor(min(xs)), floor(max(xs))

    lo, hi = interval(P)
    found = _interval_defects(lo, hi, [interval(Q) for Q in pieces])
    return [((s,), lhs, rhs) for s, lhs, rhs in islice(found, limit)]
