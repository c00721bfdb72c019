"""Tests for paving matroids and the large-block MCB bounds."""

from __future__ import annotations

from fractions import Fraction

import pytest

from mcb_workbench.bitsets import mask_of, popcount
from mcb_workbench.cover import matroid_profile
from mcb_workbench.paving import (
    DoublyCovered,
    NotACover,
    PavingBlocks,
    PavingError,
    PavingFamilyParams,
    RatioViolated,
    UncoveredMSet,
    block_partition_paving,
    complete_m_partition,
    fano_blocks,
    min_hyperplane_cover,
    pav_bound_part1,
    pav_bound_part2,
    paving_from_blocks,
    random_sparse_paving,
)


def blocks(*lists: list[int]) -> list[int]:
    return [mask_of(i - 1 for i in members) for members in lists]


@pytest.fixture
def four_points() -> PavingBlocks:
    """Three collinear points and a fourth point off the line."""
    return PavingBlocks.validated(4, 2, blocks([1, 2, 3], [1, 4], [2, 4], [3, 4]))


class TestValidation:
    """Test m-partition validation."""

    def test_blocks_are_ordered(self, four_points):
        assert four_points.blocks[0] == 0b0111
        assert four_points.to_descriptor()["blocks"][0] == [1, 2, 3]

    def test_doubly_covered(self):
        with pytest.raises(DoublyCovered):
            PavingBlocks.validated(4, 2, blocks([1, 2, 3], [1, 2, 4], [3, 4]))

    def test_uncovered(self):
        with pytest.raises(UncoveredMSet):
            PavingBlocks.validated(4, 2, blocks([1, 2, 3], [1, 4], [2, 4]))

    def test_small_block(self):
        with pytest.raises(PavingError):
            PavingBlocks.validated(3, 2, blocks([1], [1, 2], [1, 3], [2, 3]))

    def test_bad_m(self):
        with pytest.raises(PavingError):
            PavingBlocks.validated(2, 3, [])

    def test_to_matroid(self, four_points):
        matroid = four_points.to_matroid()
        assert matroid.rank == 3
        assert sorted(matroid.hyperplanes()) == sorted(four_points.blocks)

    def test_paving_from_blocks_matches_validated(self, four_points):
        matroid = paving_from_blocks(4, 2, four_points.blocks)
        assert matroid.rank == 3
        assert matroid.n == 4
        assert sorted(matroid.hyperplanes()) == sorted(four_points.blocks)

    def test_paving_from_blocks_rejects_overlap(self):
        with pytest.raises(DoublyCovered):
            paving_from_blocks(4, 2, blocks([1, 2, 3], [1, 2, 4], [3, 4]))


class TestCovers:
    """Test hyperplane covers and failure degrees."""

    def test_fano(self):
        fano = fano_blocks()
        assert min_hyperplane_cover(fano) == 3
        assert matroid_profile(fano.to_matroid()).min_failure_degree == 3

    def test_four_points(self, four_points):
        """Failure below the cover number: the long line misses only point 4."""
        assert min_hyperplane_cover(four_points) == 2
        assert matroid_profile(four_points.to_matroid()).min_failure_degree == 1

    def test_complete_m_partition(self):
        paving = complete_m_partition(5, 2, blocks([1, 2, 3]))
        assert len(paving.blocks) == 1 + 7

    def test_complete_rejects_overlap(self):
        with pytest.raises(DoublyCovered):
            complete_m_partition(5, 2, blocks([1, 2, 3], [2, 3, 4]))

    def test_block_partition(self):
        paving, designated = block_partition_paving((3, 3), 2)
        assert paving.n == 6
        assert designated == [0b000111, 0b111000]
        assert len(paving.blocks) == 2 + 9
        assert min_hyperplane_cover(paving) == 2


class TestBounds:
    """Test the hyperplane-size bound and the large-n regime bound."""

    @pytest.mark.parametrize("sizes, m, bound", [((3, 3), 2, 2), ((4, 2), 2, 1), ((5, 5), 2, 3)])
    def test_size_bound(self, sizes, m, bound):
        paving, designated = block_partition_paving(sizes, m)
        assert pav_bound_part2(paving, designated) == bound

    def test_size_bound_is_valid(self):
        """MCB holds up to the bound."""
        paving, designated = block_partition_paving((3, 3), 2)
        profile = matroid_profile(paving.to_matroid())
        assert profile.holds_for(pav_bound_part2(paving, designated))

    def test_designated_must_cover(self):
        paving, designated = block_partition_paving((3, 3), 2)
        with pytest.raises(NotACover):
            pav_bound_part2(paving, designated[:1])

    def test_designated_must_be_blocks(self, four_points):
        with pytest.raises(PavingError):
            pav_bound_part2(four_points, [0b1111])

    def test_regime_bound(self):
        paving, designated = block_partition_paving((3, 3), 2)
        params = PavingFamilyParams.from_blocks(paving, designated, 2)
        assert params.k == 2
        regime = pav_bound_part1(params)
        assert regime.regime_value == Fraction(3, 4)
        assert regime.bound == 1
        assert not regime.in_regime

    def test_large_instance_in_regime(self):
        params = PavingFamilyParams(n=80, m=2, sizes=(40, 40), ratio_bound=2)
        regime = pav_bound_part1(params)
        assert regime.regime_value == 10
        assert regime.bound == 6
        assert regime.in_regime

    def test_ratio_violated(self):
        params = PavingFamilyParams(n=10, m=2, sizes=(8, 2), ratio_bound=4)
        with pytest.raises(RatioViolated):
            pav_bound_part1(params)


class TestRandomSparsePaving:
    """Test seeded sparse paving generation."""

    def test_deterministic(self):
        assert random_sparse_paving(7, 2, 3) == random_sparse_paving(7, 2, 3)

    def test_blocks_meet_in_few_points(self):
        paving = random_sparse_paving(8, 3, 1)
        large = [b for b in paving.blocks if popcount(b) == 4]
        for i, x in enumerate(large):
            for y in large[i + 1 :]:
                assert popcount(x & y) <= 2

    def test_parameters(self):
        with pytest.raises(PavingError):
            random_sparse_paving(3, 3, 0)
