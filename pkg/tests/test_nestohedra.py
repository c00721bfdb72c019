"""Tests for building sets and the nested-set degree statements."""

from __future__ import annotations

import pytest

from mcb_workbench.bitsets import full_mask
from mcb_workbench.nestohedra import (
    BuildingSet,
    EmptyMember,
    MissingSingleton,
    NotConnected,
    NotUnionClosed,
    bs_components,
    bs_mcb,
    bs_profile,
    building_set_closure,
    matroid_surrogate,
    nestmcb_predicate,
    surrogate_degree,
)


@pytest.fixture
def simplex3() -> BuildingSet:
    """Singletons plus the ground set."""
    return BuildingSet.validated(3, [0b001, 0b010, 0b100, 0b111])


@pytest.fixture
def complete3() -> BuildingSet:
    """Every nonempty subset of [3]."""
    return BuildingSet.validated(3, range(1, 8))


class TestValidation:
    """Test building set axioms."""

    def test_valid(self, simplex3):
        assert simplex3.is_connected()
        assert simplex3.proper_members() == [0b001, 0b010, 0b100]

    def test_missing_singleton(self):
        with pytest.raises(MissingSingleton):
            BuildingSet.validated(2, [0b01, 0b11])

    def test_empty_member(self):
        with pytest.raises(EmptyMember):
            BuildingSet.validated(1, [0, 0b1])

    def test_not_union_closed(self):
        with pytest.raises(NotUnionClosed):
            BuildingSet.validated(3, [0b001, 0b010, 0b100, 0b011, 0b110])

    def test_member_outside_ground(self):
        with pytest.raises(ValueError):
            BuildingSet.validated(2, [0b01, 0b10, 0b100])

    def test_descriptor(self, simplex3):
        assert simplex3.to_descriptor() == {
            "type": "building_set",
            "n": 3,
            "members": [[1], [2], [3], [1, 2, 3]],
        }


class TestClosure:
    """Test building set closure."""

    def test_adds_unions_and_singletons(self):
        closure = building_set_closure(3, [0b011, 0b110])
        assert set(closure.members) == {0b001, 0b010, 0b100, 0b011, 0b110, 0b111}

    def test_disjoint_generators_stay_disconnected(self):
        closure = building_set_closure(4, [0b0011, 0b1100])
        assert len(closure.members) == 6
        assert not closure.is_connected()

    def test_closure_is_idempotent(self):
        once = building_set_closure(4, [0b0011, 0b0110, 0b1000])
        assert building_set_closure(4, once.members) == once

    def test_rejects_empty_member(self):
        with pytest.raises(EmptyMember):
            building_set_closure(2, [0])


class TestDegreeStatements:
    """Test the predicate, component count and MCB over B minus [n]."""

    def test_simplex_predicate_fails(self, simplex3):
        predicate = nestmcb_predicate(simplex3)
        assert not predicate.holds
        assert [c for _, c in predicate.counts] == [0, 0, 0]

    def test_complete_predicate_holds(self, complete3):
        predicate = nestmcb_predicate(complete3)
        assert predicate.holds
        assert len(predicate.counts) == 3
        assert predicate.to_tsv_row()[-1] == "true"

    def test_components(self, simplex3, complete3):
        assert bs_components(simplex3).components == 3
        assert bs_components(simplex3).degree == 0
        assert bs_components(complete3).degree == 2

    def test_disconnected_is_rejected(self):
        closure = building_set_closure(4, [0b0011, 0b1100])
        with pytest.raises(NotConnected):
            nestmcb_predicate(closure)
        with pytest.raises(NotConnected):
            bs_components(closure)

    def test_profiles(self, simplex3, complete3):
        assert bs_profile(simplex3).min_failure_degree == 2
        assert bs_profile(complete3).min_failure_degree == 1
        assert bs_mcb(simplex3, 1).holds
        assert not bs_mcb(complete3, 1).holds


class TestSurrogate:
    """Test the product-of-simplices matroid surrogate."""

    def test_disjoint_maxima(self):
        building_set = building_set_closure(4, [0b0011, 0b1100, full_mask(4)])
        matroid = matroid_surrogate(building_set)
        assert matroid is not None
        assert matroid.rank == 2
        assert surrogate_degree(building_set) == 2

    def test_overlapping_maxima_have_no_surrogate(self, complete3):
        assert matroid_surrogate(complete3) is None
        assert surrogate_degree(complete3) is None
