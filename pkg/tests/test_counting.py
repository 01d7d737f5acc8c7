from fractions import Fraction as F
from math import floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticeface import counting
from latticeface.lattice_face import negative_boundary_lattice_points, omega_membership
from latticeface.polytope import Polytope, fiber, lattice_points, project

rationals = st.builds(F, st.integers(-9, 9), st.integers(1, 5))


def polytopes(d):
    pts = st.lists(st.tuples(*[rationals] * d), min_size=d + 1, max_size=5)
    return pts.map(Polytope).filter(lambda P: P.is_full_dimensional)


class TestFloorSum:
    @settings(max_examples=300)
    @given(st.integers(0, 40), st.integers(1, 30), st.integers(-50, 50), st.integers(-50, 50))
    def test_matches_direct_sum(self, n, m, a, b):
        assert counting.floor_sum(n, m, a, b) == sum((a * i + b) // m for i in range(n))

    def test_large_arguments(self):
        n, m, a, b = 200_000, 7919, 10**9 + 7, -(10**12)
        assert counting.floor_sum(n, m, a, b) == sum((a * i + b) // m for i in range(n))

    @settings(max_examples=100)
    @given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 12), st.integers(-10, 10), st.integers(0, 15))
    def test_line_sums(self, c, s, q, t0, width):
        line = (c, s, q)
        t1 = t0 + width
        values = [F(c + s * t, q) for t in range(t0, t1 + 1)]
        assert counting.sum_floor(line, t0, t1) == sum(floor(v) for v in values)
        assert counting.sum_ceil(line, t0, t1) == sum(-floor(-v) for v in values)
        assert counting.count_integral(line, t0, t1) == sum(v.denominator == 1 for v in values)


class TestEnvelopes:
    def test_lower_envelope_switches(self):
        lines = [(0, 1, 1), (10, -1, 1)]  # t and 10 - t
        env = counting.lower_envelope(lines, 0, 10)
        for start, end, line in env:
            for t in range(start, end + 1):
                assert counting.line_value(line, t) == min(counting.line_value(l, t) for l in lines)
        assert env[0][0] == 0 and env[-1][1] == 10


class TestCounts:
    @pytest.mark.parametrize(
        "pts, expected",
        [
            ([(0, 0), (4, 0), (3, 5), (1, 5)], 20),
            ([(0, 0), (2, 0), (1, 1), (3, 1)], 6),
            ([(0, 0), (1, 0), (0, 1)], 3),
            ([(0,), (3,)], 4),
            ([(F(1, 3),), (F(2, 3),)], 0),
        ],
    )
    def test_known_counts(self, pts, expected):
        assert counting.count_lattice_points(Polytope(pts)) == expected

    @settings(max_examples=60, deadline=None)
    @given(polytopes(2))
    def test_plane_matches_enumeration(self, P):
        assert counting.count_lattice_points(P) == len(list(lattice_points(P)))

    @settings(max_examples=40, deadline=None)
    @given(polytopes(3))
    def test_space_matches_enumeration(self, P):
        assert counting.count_lattice_points(P) == len(list(lattice_points(P)))

    @settings(max_examples=40, deadline=None)
    @given(polytopes(2))
    def test_omega_matches_membership(self, P):
        pts = list(lattice_points(P))
        assert counting.count_omega_points(P) == sum(omega_membership(P, x) for x in pts)

    @settings(max_examples=30, deadline=None)
    @given(polytopes(3))
    def test_fiber_statistics(self, P):
        pts = list(lattice_points(P))
        assert counting.count_nonempty_lattice_fibers(P) == len({x[:-1] for x in pts})
        minima = 0
        for y in lattice_points(project(P, 1)):
            n = fiber(P, y)[0]
            minima += n[-1].denominator == 1
        assert counting.count_integral_fiber_minima(P) == minima


def test_negative_boundary_of_triangle():
    P = Polytope([(0, 0), (2, 0), (1, 1)])
    assert negative_boundary_lattice_points(P) == [(0, 0), (1, 0), (2, 0)]
    assert negative_boundary_lattice_points(Polytope([(0,), (1,)])) == [(0,)]
