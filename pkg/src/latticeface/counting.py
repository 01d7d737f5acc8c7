"""Exact lattice-point sums over fibers.

Lattice points of the first ``d - 2`` coordinates are enumerated one by
one.  For each such prefix ``z`` the remaining plane is handled in closed
form: the coordinate ``t`` runs over an integer range and the fiber over
``(z, t)`` is bounded by piecewise-affine functions of ``t``, so every
per-fiber quantity we need (integer counts, integrality of endpoints) sums
to a handful of floor sums.  This keeps counting feasible for the very
stretched polytopes produced by lattice-face scaling.

A line is an integer triple ``(c, s, q)`` with ``q > 0`` standing for the
function ``t -> (c + s*t) / q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .polytope import Polytope, fiber, lattice_points, project


def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """sum(floor((a*i + b) / m) for i in range(n)) for m > 0 and any integers a, b."""
    if n <= 0:
        return 0
    ans = 0
    if a < 0 or a >= m:
        ans += n * (n - 1) // 2 * (a // m)
        a %= m
    if b < 0 or b >= m:
        ans += n * (b // m)
        b %= m
    while True:
        if a >= m:
            ans += n * (n - 1) // 2 * (a // m)
            a %= m
        if b >= m:
            ans += n * (b // m)
            b %= m
        y_max = a * n + b
        if y_max < m:
            return ans
        n, b = divmod(y_max, m)
        m, a = a, m


def line_value(line, t) -> Fraction:
    c, s, q = line
    return Fraction(c + s * t, q)


def sum_floor(line, t0: int, t1: int) -> int:
    """sum of floor(line(t)) for integer t in [t0, t1]."""
    c, s, q = line
    return floor_sum(t1 - t0 + 1, q, s, c + s * t0)


def sum_ceil(line, t0: int, t1: int) -> int:
    c, s, q = line
    return -floor_sum(t1 - t0 + 1, q, -s, -c - s * t0)


def count_integral(line, t0: int, t1: int) -> int:
    """Number of integer t in [t0, t1] with line(t) an integer."""
    c, s, q = line
    if q == 1:
        return t1 - t0 + 1
    n = t1 - t0 + 1
    b = c + s * t0
    return floor_sum(n, q, s, b) - floor_sum(n, q, s, b - 1)


def _less(l1, l2, t) -> int:
    # sign of l1(t) - l2(t), exact integer arithmetic
    c1, s1, q1 = l1
    c2, s2, q2 = l2
    v = (c1 + s1 * t) * q2 - (c2 + s2 * t) * q1
    return (v > 0) - (v < 0)


def _slope_cmp(l1, l2) -> int:
    v = l1[1] * l2[2] - l2[1] * l1[2]
    return (v > 0) - (v < 0)


def lower_envelope(lines, t0: int, t1: int) -> list[tuple[int, int, tuple]]:
    """Pieces ``(start, end, line)`` where ``line`` is the minimum on the integers start..end."""
    pieces = []
    t = t0
    while t <= t1:
        best = lines[0]
        for l in lines[1:]:
            c = _less(l, best, t)
            if c < 0 or (c == 0 and _slope_cmp(l, best) < 0):
                best = l
        end = t1
        c_b, s_b, q_b = best
        for l in lines:
            if _slope_cmp(l, best) < 0:
                c_l, s_l, q_l = l
                # crossing: t* = (c_l q_b - c_b q_l) / (s_b q_l - s_l q_b), denominator > 0
                num = c_l * q_b - c_b * q_l
                den = s_b * q_l - s_l * q_b
                end = min(end, num // den)
        pieces.append((t, end, best))
        t = end + 1
    return pieces


def upper_envelope(lines, t0: int, t1: int) -> list[tuple[int, int, tuple]]:
    neg = [(-c, -s, q) for c, s, q in lines]
    return [(a, b, (-l[0], -l[1], l[2])) for a, b, l in lower_envelope(neg, t0, t1)]


@dataclass
class Column:
    """The plane of P over a lattice prefix ``z``: top and bottom as functions of t."""

    z: tuple
    t0: int
    t1: int
    top: list  # lower envelope of upper-bounding lines
    bottom: list  # upper envelope of lower-bounding lines

    def merged(self):
        """Pieces ``(start, end, top_line, bottom_line)`` on which both are affine."""
        cuts = sorted({p[0] for p in self.top} | {p[0] for p in self.bottom})
        out = []
        ti = bi = 0
        for k, start in enumerate(cuts):
            end = cuts[k + 1] - 1 if k + 1 < len(cuts) else self.t1
            while self.top[ti][1] < start:
                ti += 1
            while self.bottom[bi][1] < start:
                bi += 1
            out.append((start, end, self.top[ti][2], self.bottom[bi][2]))
        return out


class Slicer:
    """Precomputed facet data of a full-dimensional polytope of dimension >= 2."""

    def __init__(self, P: Polytope):
        d = P.dim
        if d < 2:
            raise ValueError("slicing needs dimension at least 2")
        self.P = P
        self.base = project(P, 1)
        self.upper = []
        self.lower = []
        for f in P.facets:
            alpha, a = f.hyperplane.alpha, f.hyperplane.a
            entry = (alpha[:d - 2], alpha[d - 2], alpha[d - 1], a)
            if alpha[-1] > 0:
                self.upper.append(entry)
            elif alpha[-1] < 0:
                self.lower.append(entry)

    def prefixes(self):
        return lattice_points(project(self.P, 2))

    def column(self, z) -> Column | None:
        f = fiber(self.base, z)
        if f is None:
            return None
        t0, t1 = ceil(f[0][-1]), floor(f[1][-1])
        if t0 > t1:
            return None
        top = []
        for pre, at, as_, a in self.upper:
            b = a - sum(x * y for x, y in zip(pre, z))
            top.append((b, -at, as_))
        bottom = []
        for pre, at, as_, a in self.lower:
            b = a - sum(x * y for x, y in zip(pre, z))
            bottom.append((-b, at, -as_))
        return Column(tuple(z), t0, t1, lower_envelope(top, t0, t1), upper_envelope(bottom, t0, t1))

    def columns(self):
        for z in self.prefixes():
            col = self.column(z)
            if col is not None:
                yield col


def _segment_bounds(P: Polytope):
    lo = min(v[0] for v in P.vertices)
    hi = max(v[0] for v in P.vertices)
    return lo, hi


def count_lattice_points(P: Polytope) -> int:
    """|L(P)| for a full-dimensional polytope."""
    if P.dim == 0:
        return 1
    if P.dim == 1:
        lo, hi = _segment_bounds(P)
        return max(0, floor(hi) - ceil(lo) + 1)
    total = 0
    for col in Slicer(P).columns():
        total += col.t1 - col.t0 + 1
        for a, b, line in col.top:
            total += sum_floor(line, a, b)
        for a, b, line in col.bottom:
            total -= sum_ceil(line, a, b)
    return total


def count_omega_points(P: Polytope) -> int:
    """Lattice points of P that are not the lowest point of their fiber."""
    if P.dim == 1:
        lo, hi = _segment_bounds(P)
        return floor(hi) - floor(lo)
    total = 0
    for col in Slicer(P).columns():
        for a, b, line in col.top:
            total += sum_floor(line, a, b)
        for a, b, line in col.bottom:
            total -= sum_floor(line, a, b)
    return total


def count_integral_fiber_minima(P: Polytope) -> int:
    """Number of y in L(pi(P)) whose lowest fiber point n(y, P) is a lattice point."""
    if P.dim == 1:
        lo, _ = _segment_bounds(P)
        return 1 if lo.denominator == 1 else 0
    total = 0
    for col in Slicer(P).columns():
        for a, b, line in col.bottom:
            total += count_integral(line, a, b)
    return total


def count_nonempty_lattice_fibers(P: Polytope) -> int:
    """|pi(L(P))|: lattice points of pi(P) whose fiber holds a lattice point."""
    if P.dim == 1:
        return 1 if count_lattice_points(P) else 0
    total = 0
    for col in Slicer(P).columns():
        for a, b, top, bottom in col.merged():
            total += _count_nonempty(top, bottom, a, b)
    return total


def _count_nonempty(top, bottom, a: int, b: int) -> int:
    # Fibers of length >= 1 always hold a lattice point; only the t with
    # top - bottom < 1 need an individual look.  That set is an interval
    # because the length is affine in t.
    ct, st, qt = top
    cb, sb, qb = bottom
    # length(t) * qt * qb = (ct qb - cb qt) + (st qb - sb qt) t
    c0 = ct * qb - cb * qt
    s0 = st * qb - sb * qt
    lim = qt * qb
    short = _interval_where_less(c0, s0, lim, a, b)
    count = b - a + 1
    if short is None:
        return count
    for t in range(short[0], short[1] + 1):
        if floor(line_value(top, t)) < ceil(line_value(bottom, t)):
            count -= 1
    return count


def _interval_where_less(c: int, s: int, lim: int, a: int, b: int):
    # integers t in [a, b] with c + s t < lim
    if s == 0:
        return (a, b) if c < lim else None
    if s > 0:
        # t < (lim - c) / s
        hi = -((c - lim) // s) - 1 if (lim - c) % s == 0 else (lim - c) // s
        lo, hi = a, min(b, hi)
    else:
        # t > (lim - c) / s  ==  t > (c - lim) / -s
        lo = (c - lim) // (-s) + 1
        lo, hi = max(a, lo), b
    return (lo, hi) if lo <= hi else None
