"""Paving matroids given by m-partitions.

A paving matroid of rank m + 1 on [n] is determined by its hyperplanes, a
family of blocks of size >= m such that every m-subset of [n] lies in exactly
one block. The remaining flats are the sets of size below m and [n] itself.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil, comb, floor

from loguru import logger

from .bitsets import full_mask, indices, lex_key, mask_of, popcount, to_one_based
from .cover import minimum_cover
from .matroid import Matroid

REGIME_FACTOR = 4


class PavingError(ValueError):
    """Base exception for paving matroid errors."""

    pass


class UncoveredMSet(PavingError):
    pass


class DoublyCovered(PavingError):
    pass


class NotACover(PavingError):
    """Designated blocks do not cover the ground set."""

    pass


class RatioViolated(PavingError):
    pass


def _fail(error: type[PavingError], message: str) -> PavingError:
    logger.error(message)
    return error(message)


@dataclass(frozen=True)
class PavingBlocks:
    """Validated m-partition of [n]; blocks in (size descending, lexicographic) order."""

    n: int
    m: int
    blocks: tuple[int, ...]

    @classmethod
    def validated(cls, n: int, m: int, blocks: Iterable[int]) -> PavingBlocks:
        """Check that every m-subset lies in exactly one block.

        Raises:
            PavingError: Bad n or m, or a block that is too small or leaves [n].
            DoublyCovered: Some m-subset lies in two blocks.
            UncoveredMSet: Some m-subset lies in no block.
        """
        if not 1 <= m <= n:
            raise _fail(PavingError, f"Paving matroids need 1 <= m <= n, got m={m}, n={n}")
        ground = full_mask(n)
        pool = sorted(set(blocks), key=lambda b: (-popcount(b), lex_key(b)))
        owner: dict[int, int] = {}
        for block in pool:
            if block & ~ground:
                raise _fail(PavingError, f"Block {to_one_based(block)} leaves [{n}]")
            if popcount(block) < m:
                raise _fail(PavingError, f"Block {to_one_based(block)} has fewer than {m} elements")
            for subset in combinations(indices(block), m):
                key = mask_of(subset)
                if key in owner:
                    raise _fail(
                        DoublyCovered,
                        f"{to_one_based(key)} lies in {to_one_based(owner[key])} "
                        f"and {to_one_based(block)}",
                    )
                owner[key] = block
        if len(owner) != comb(n, m):
            missing = next(
                mask_of(s) for s in combinations(range(n), m) if mask_of(s) not in owner
            )
            raise _fail(UncoveredMSet, f"{to_one_based(missing)} lies in no block")
        return cls(n=n, m=m, blocks=tuple(pool))

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def to_matroid(self) -> Matroid:
        """Flats: sets of size < m, the blocks (rank m) and [n] (rank m + 1)."""
        rank_of_flat: dict[int, int] = {}
        for size in range(self.m):
            for subset in combinations(range(self.n), size):
                rank_of_flat[mask_of(subset)] = size
        for block in self.blocks:
            rank_of_flat[block] = self.m
        rank_of_flat.setdefault(self.ground, self.m + 1)
        matroid = Matroid.trusted(self.n, rank_of_flat)
        logger.debug(f"Paving matroid from {len(self.blocks)} blocks: {matroid}")
        return matroid

    def to_descriptor(self) -> dict[str, object]:
        return {
            "type": "paving",
            "n": self.n,
            "m": self.m,
            "blocks": [to_one_based(b) for b in self.blocks],
        }


def paving_from_blocks(n: int, m: int, blocks: Iterable[int]) -> Matroid:
    """Validated paving matroid of rank m + 1."""
    return PavingBlocks.validated(n, m, blocks).to_matroid()


def complete_m_partition(n: int, m: int, blocks: Sequence[int]) -> PavingBlocks:
    """Add every m-subset outside the given blocks as a block of its own.

    Raises:
        DoublyCovered: Two given blocks share m or more elements.
    """
    given = list(dict.fromkeys(blocks))
    for x, y in combinations(given, 2):
        if popcount(x & y) >= m:
            raise _fail(
                DoublyCovered,
                f"Blocks {to_one_based(x)} and {to_one_based(y)} share {popcount(x & y)} elements",
            )
    filler = [
        key
        for key in (mask_of(s) for s in combinations(range(n), m))
        if not any(key & b == key for b in given)
    ]
    return PavingBlocks.validated(n, m, [*given, *filler])


def block_partition_paving(sizes: Sequence[int], m: int) -> tuple[PavingBlocks, list[int]]:
    """Large blocks of the given sizes partitioning [sum(sizes)], completed to an m-partition.

    Returns the paving data and the designated large blocks.
    """
    designated: list[int] = []
    start = 0
    for size in sizes:
        designated.append(full_mask(size) << start)
        start += size
    return complete_m_partition(start, m, designated), designated


def min_hyperplane_cover(paving: PavingBlocks) -> int:
    """Fewest blocks whose union is the whole ground set."""
    result = minimum_cover(paving.ground, paving.blocks, antichain=True)
    if result.size is None:
        raise _fail(PavingError, "Blocks do not cover the ground set")
    return result.size


def _check_designated(paving: PavingBlocks, designated: Sequence[int]) -> None:
    if not designated:
        raise _fail(NotACover, "At least one designated block is required")
    union = 0
    for block in designated:
        if block not in paving.blocks:
            raise _fail(PavingError, f"{to_one_based(block)} is not a block")
        union |= block
    if union != paving.ground:
        raise _fail(NotACover, f"Designated blocks miss {to_one_based(paving.ground & ~union)}")


def pav_bound_part2(paving: PavingBlocks, designated: Sequence[int]) -> int:
    """Largest integer a with a < 1 + (k - 1) min|H_i| / (k (m - 1)).

    Raises:
        NotACover: The designated blocks do not cover [n].
        PavingError: m < 2, where the bound is undefined.
    """
    _check_designated(paving, designated)
    if paving.m < 2:
        raise _fail(PavingError, "The hyperplane-size bound needs m >= 2")
    k = len(designated)
    smallest = min(popcount(b) for b in designated)
    bound = 1 + Fraction((k - 1) * smallest, k * (paving.m - 1))
    return ceil(bound) - 1


@dataclass(frozen=True)
class PavingFamilyParams:
    """Parameters of the large-block bound.

    Attributes:
        n: Ground set size.
        m: Block parameter (rank m + 1).
        sizes: Sizes of the designated blocks H_1..H_k.
        ratio_bound: C, with max|H_i| / min|H_i| < C required.
    """

    n: int
    m: int
    sizes: tuple[int, ...]
    ratio_bound: int

    @classmethod
    def from_blocks(
        cls, paving: PavingBlocks, designated: Sequence[int], ratio_bound: int
    ) -> PavingFamilyParams:
        _check_designated(paving, designated)
        return cls(
            n=paving.n,
            m=paving.m,
            sizes=tuple(popcount(b) for b in designated),
            ratio_bound=ratio_bound,
        )

    @property
    def k(self) -> int:
        return len(self.sizes)


@dataclass(frozen=True)
class RegimeBound:
    """floor(k - 1 + n / (2 C k^2 (m - 1))) and whether the instance is in the large-n regime."""

    bound: int
    regime_value: Fraction
    in_regime: bool

    def to_dict(self) -> dict[str, object]:
        return {
            "bound": self.bound,
            "regime_value": str(self.regime_value),
            "regime_factor": REGIME_FACTOR,
            "in_regime": self.in_regime,
        }


def pav_bound_part1(params: PavingFamilyParams) -> RegimeBound:
    """Bound for k large blocks; the regime predicate is n / (C k^2 (m - 1)) >= REGIME_FACTOR k.

    Raises:
        RatioViolated: max|H_i| / min|H_i| >= C.
        PavingError: m < 2.
    """
    if params.m < 2:
        raise _fail(PavingError, "The large-block bound needs m >= 2")
    if max(params.sizes) >= params.ratio_bound * min(params.sizes):
        raise _fail(
            RatioViolated,
            f"Block sizes {list(params.sizes)} violate the ratio bound {params.ratio_bound}",
        )
    k, c, m = params.k, params.ratio_bound, params.m
    value = Fraction(params.n, c * k * k * (m - 1))
    bound = floor(k - 1 + value / 2)
    in_regime = value >= REGIME_FACTOR * k
    logger.debug(f"Large-block bound {bound} (regime value {value}, in regime: {in_regime})")
    return RegimeBound(bound=bound, regime_value=value, in_regime=in_regime)


def random_sparse_paving(n: int, m: int, seed: int, attempts: int = 200) -> PavingBlocks:
    """Greedy random circuit-hyperplanes of size m + 1, completed to an m-partition.

    Two accepted blocks share at most m - 1 elements.
    """
    if not n > m >= 2:
        raise _fail(PavingError, f"Sparse paving generation needs n > m >= 2, got n={n}, m={m}")
    rng = random.Random(seed)
    accepted: list[int] = []
    if m + 1 < n:
        for _ in range(attempts):
            candidate = mask_of(rng.sample(range(n), m + 1))
            if candidate in accepted:
                continue
            if all(popcount(candidate & b) <= m - 1 for b in accepted):
                accepted.append(candidate)
    logger.debug(f"Sparse paving on [{n}] with seed {seed}: {len(accepted)} circuit-hyperplanes")
    return complete_m_partition(n, m, accepted)


def fano_blocks() -> PavingBlocks:
    lines = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]
    return PavingBlocks.validated(7, 2, [mask_of(i - 1 for i in line) for line in lines])

