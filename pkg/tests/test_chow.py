"""Tests for Chow ring Hilbert series, the FY basis and annihilator quotients."""

from __future__ import annotations

import pytest

from mcb_workbench.chow import (
    ChowPresentation,
    LoopyMatroid,
    NotAHyperplane,
    TooLarge,
    annihilator_quotient_dims,
    fy_basis_counts,
    fy_basis_enumerate,
    gap_factor,
    hilbert_fy,
    hilbert_presentation_oracle,
)
from mcb_workbench.matroid import (
    boolean_matroid,
    component_count,
    matroid_from_flats,
    uniform_matroid,
)


class TestHilbertFy:
    """Test the flag-count formula."""

    def test_gap_factor(self):
        assert gap_factor(1).is_zero()
        assert gap_factor(3).to_list() == [0, 1, 1]

    def test_rank_two(self, u23):
        assert hilbert_fy(u23).to_list() == [1, 1]

    def test_boolean_is_eulerian(self, boolean3):
        assert hilbert_fy(boolean3).to_list() == [1, 4, 1]

    def test_k4(self, k4):
        assert hilbert_fy(k4).to_list() == [1, 8, 1]

    @pytest.mark.parametrize("r, n", [(2, 4), (3, 4), (3, 5), (4, 4), (4, 5)])
    def test_palindromic(self, r, n):
        assert hilbert_fy(uniform_matroid(r, n)).is_palindromic()

    def test_loops_are_rejected(self):
        with pytest.raises(LoopyMatroid):
            hilbert_fy(matroid_from_flats(2, [0b01, 0b11]))


class TestFyBasis:
    """Test explicit basis enumeration."""

    def test_counts_match_series(self, k4):
        assert fy_basis_counts(k4) == hilbert_fy(k4).to_list()

    def test_degree_zero_is_one(self, u23):
        basis = fy_basis_enumerate(u23, 0)
        assert len(basis) == 1
        assert str(basis[0]) == "1"

    def test_top_degree_monomial(self, boolean3):
        (top,) = fy_basis_enumerate(boolean3, 2)
        assert top.degree == 2
        assert str(top) == "x[1, 2, 3]^2"
        assert top.to_dict() == {"factors": [{"flat": [1, 2, 3], "exponent": 2}]}

    def test_negative_degree_is_empty(self, u23):
        assert fy_basis_enumerate(u23, -1) == []


class TestPresentationOracle:
    """Test the graded presentation against the flag formula."""

    @pytest.mark.parametrize("r, n", [(2, 3), (3, 3), (2, 4), (3, 4)])
    def test_agrees_with_fy(self, r, n):
        matroid = uniform_matroid(r, n)
        assert hilbert_presentation_oracle(matroid) == hilbert_fy(matroid)

    def test_agrees_on_k4(self, k4):
        assert hilbert_presentation_oracle(k4) == hilbert_fy(k4)

    @pytest.mark.slow
    def test_agrees_on_six_elements(self):
        matroid = uniform_matroid(4, 6)
        assert hilbert_presentation_oracle(matroid) == hilbert_fy(matroid)

    @pytest.mark.slow
    def test_agrees_on_small_catalog(self, catalog_matroids):
        """Every loopless catalog matroid within the presentation size guard."""
        checked = 0
        for name, matroid in catalog_matroids:
            if matroid.n > ChowPresentation.MAX_ELEMENTS or matroid.rank < 1:
                continue
            if not matroid.is_loopless():
                continue
            series = hilbert_fy(matroid)
            assert hilbert_presentation_oracle(matroid) == series, name
            if component_count(matroid) == 1:
                assert series.is_palindromic(), name
            checked += 1
        assert checked >= 60

    def test_size_guard(self):
        with pytest.raises(TooLarge):
            ChowPresentation(boolean_matroid(ChowPresentation.MAX_ELEMENTS + 1))

    def test_variables_are_proper_flats(self, u23):
        assert ChowPresentation(u23).variables == [0b001, 0b010, 0b100]


class TestAnnihilator:
    """Test dimensions of A*(M) / Ann(x_F)."""

    def test_rank_two(self, u23):
        quotient = annihilator_quotient_dims(u23, 0b001)
        assert quotient.dims == (1, 0)
        assert quotient.total == 1

    def test_boolean(self, boolean3):
        quotient = annihilator_quotient_dims(boolean3, 0b011)
        assert quotient.dims == (1, 1, 0)
        assert quotient.to_tsv_row() == ["1,2", "1,1,0", "2"]

    def test_matches_restriction_series(self, k4):
        """A hyperplane quotient has the Hilbert function of the restriction."""
        triangle = next(h for h in k4.hyperplanes() if bin(h).count("1") == 3)
        quotient = annihilator_quotient_dims(k4, triangle)
        assert list(quotient.dims[:-1]) == hilbert_fy(uniform_matroid(2, 3)).to_list()

    def test_rejects_non_hyperplane(self, boolean3):
        with pytest.raises(NotAHyperplane):
            annihilator_quotient_dims(boolean3, 0b001)
