from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticeface import linalg
from latticeface.errors import (
    DimensionMismatchError,
    EmptyInputError,
    NotAHyperplaneError,
    SingularMatrixError,
)

small = st.integers(-6, 6)
rationals = st.builds(F, st.integers(-9, 9), st.integers(1, 9))


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


class TestBasics:
    def test_vec_converts_to_fractions(self):
        v = linalg.vec([1, "1/2", F(3, 4)])
        assert v == (F(1), F(1, 2), F(3, 4))
        assert all(isinstance(x, F) for x in v)

    def test_matmul_shapes(self):
        a = [[1, 2], [3, 4], [5, 6]]
        b = [[1, 0, 1], [0, 1, 1]]
        assert linalg.matmul(a, b) == ((1, 2, 3), (3, 4, 7), (5, 6, 11))

    def test_matmul_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            linalg.matmul([[1, 2]], [[1, 2]])

    def test_primitive(self):
        assert linalg.primitive([F(1, 2), F(-1, 3)]) == (3, -2)
        assert linalg.primitive([0, 4, -6]) == (0, 2, -3)

    def test_denominator_lcm(self):
        assert linalg.denominator_lcm([F(1, 2), F(1, 3), 5]) == 6


class TestElimination:
    def test_rref_pivots(self):
        rows, pivots = linalg.rref([[1, 2, 3], [2, 4, 7]])
        assert pivots == [0, 2]
        assert rows[0] == [1, 2, 0]

    def test_nullspace_of_rank_one(self):
        ns = linalg.nullspace([[1, 1, 1]])
        assert len(ns) == 2
        for v in ns:
            assert sum(v) == 0

    def test_det_known(self):
        assert linalg.det([[2, 0], [1, 3]]) == 6
        assert linalg.det([[0, 1], [1, 0]]) == -1
        assert linalg.det([]) == 1

    def test_det_non_square(self):
        with pytest.raises(DimensionMismatchError):
            linalg.det([[1, 2, 3], [4, 5, 6]])

    def test_solve_singular(self):
        with pytest.raises(SingularMatrixError):
            linalg.solve([[1, 2], [2, 4]], [1, 2])

    def test_inverse(self):
        m = [[2, 1], [1, 1]]
        assert linalg.matmul(m, linalg.inverse(m)) == linalg.identity(2)

    @settings(max_examples=60, deadline=None)
    @given(square(3), square(3))
    def test_det_multiplicative(self, a, b):
        assert linalg.det(linalg.matmul(a, b)) == linalg.det(a) * linalg.det(b)

    @settings(max_examples=60, deadline=None)
    @given(square(3))
    def test_det_transpose(self, a):
        assert linalg.det(a) == linalg.det(linalg.transpose(a))

    @settings(max_examples=40, deadline=None)
    @given(square(3), st.lists(small, min_size=3, max_size=3))
    def test_solve_round_trip(self, a, b):
        if linalg.det(a) == 0:
            return
        x = linalg.solve(a, b)
        assert linalg.matvec(a, x) == linalg.vec(b)


class TestAffine:
    def test_affine_dimension(self):
        assert linalg.affine_dimension([(0, 0, 0), (1, 1, 1), (2, 2, 2)]) == 1
        assert linalg.affine_dimension([(0, 0), (1, 0), (0, 1)]) == 2
        assert linalg.affine_dimension([(5, 5)]) == 0

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            linalg.solve_affine([])

    def test_affine_basis_indices_skip_dependent(self):
        pts = [(0, 0), (1, 1), (2, 2), (0, 1)]
        assert linalg.affine_basis_indices(pts) == [0, 1, 3]

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.tuples(rationals, rationals, rationals), min_size=1, max_size=5), square(3))
    def test_affine_dimension_invariant_under_invertible_maps(self, pts, m):
        if linalg.det(m) == 0:
            return
        image = [linalg.matvec(m, p) for p in pts]
        assert linalg.affine_dimension(image) == linalg.affine_dimension(pts)


class TestHyperplane:
    def test_line_through_origin(self):
        h = linalg.hyperplane_equation([(0, 0), (3, 1)])
        assert (h.alpha, h.a) == ((1, -3), 0)

    def test_rational_vertical_line(self):
        h = linalg.hyperplane_equation([(F(1, 2), 0), (F(1, 2), 1)])
        assert (h.alpha, h.a) == ((2, 0), 1)

    def test_dependent_points(self):
        with pytest.raises(NotAHyperplaneError):
            linalg.hyperplane_equation([(0, 0, 0), (1, 1, 1), (2, 2, 2)])

    def test_canonical_first_entry_positive(self):
        h = linalg.hyperplane_equation([(0, 1), (1, 0)])
        assert h.alpha[0] > 0
        assert h.negated().canonical() == h

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.tuples(rationals, rationals, rationals), min_size=3, max_size=3))
    def test_contains_its_points_and_is_primitive(self, pts):
        if not linalg.affinely_independent(pts):
            return
        h = linalg.hyperplane_equation(pts)
        assert all(h.value(p) == 0 for p in pts)
        from math import gcd
        g = 0
        for x in h.alpha + (h.a,):
            g = gcd(g, x)
        assert g == 1
