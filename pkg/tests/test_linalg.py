"""Tests for exact rational linear algebra."""

from __future__ import annotations

from fractions import Fraction

from mcb_workbench.linalg import (
    SparseRowReducer,
    cross,
    dot,
    in_span,
    integer_row,
    nullspace,
    rank,
    rowspace_equal,
)


class TestDenseRoutines:
    """Test rank, null space and friends."""

    def test_integer_row_is_primitive_with_positive_lead(self):
        assert integer_row([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2)
        assert integer_row([0, 4, 6]) == (0, 2, 3)
        assert integer_row([0, 0]) == (0, 0)

    def test_rank(self):
        assert rank([[1, 0], [0, 1], [1, 1]]) == 2
        assert rank([[1, 2, 3], [2, 4, 6]]) == 1
        assert rank([[0, 0]]) == 0
        assert rank([]) == 0

    def test_nullspace(self):
        basis = nullspace([[1, 1, 0]], 3)
        assert len(basis) == 2
        for vector in basis:
            assert dot([1, 1, 0], vector) == 0

    def test_in_span(self):
        assert in_span([2, 2], [[1, 1]])
        assert not in_span([1, 0], [[1, 1]])
        assert in_span([0, 0], [])

    def test_rowspace_equal(self):
        assert rowspace_equal([[1, 0], [0, 1]], [[1, 1], [1, -1]])
        assert not rowspace_equal([[1, 0]], [[0, 1]])

    def test_cross(self):
        assert cross([1, 0, 0], [0, 1, 0]) == (0, 0, 1)


class TestSparseRowReducer:
    """Test incremental sparse elimination."""

    def test_add_reports_independence(self):
        reducer = SparseRowReducer()
        assert reducer.add({0: 1, 1: -1})
        assert reducer.add({1: 1, 2: -1})
        assert not reducer.add({0: 1, 2: -1})
        assert reducer.rank == 2

    def test_zero_row_is_dependent(self):
        reducer = SparseRowReducer()
        assert not reducer.add({})
        assert not reducer.add({3: 0})

    def test_copy_is_independent(self):
        reducer = SparseRowReducer()
        reducer.add({0: 2})
        clone = reducer.copy()
        clone.add({1: 1})
        assert reducer.rank == 1
        assert clone.rank == 2
