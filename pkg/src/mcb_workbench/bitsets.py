"""Bitset helpers and the SetFamily container.

Subsets of the ground set [n] are stored as Python ints: bit i set means the
0-based element i (1-based element i + 1) belongs to the set. Every family,
flat list, building set and cover in the package travels through these helpers.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass


def full_mask(n: int) -> int:
    """Return the bitset of the whole ground set [n]."""
    return (1 << n) - 1


def bit(i: int) -> int:
    """Singleton bitset of the 0-based element ``i``."""
    return 1 << i


def popcount(mask: int) -> int:
    return mask.bit_count()


def indices(mask: int) -> list[int]:
    """Return the 0-based element indices contained in ``mask``, ascending."""
    out: list[int] = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_bits(mask: int) -> Iterator[int]:
    """Lazy counterpart of :func:`indices`."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    """Build a bitset from 0-based indices."""
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def lex_key(mask: int) -> tuple[int, ...]:
    """Lexicographic sort key of a bitset (ascending index tuple)."""
    return tuple(indices(mask))


def rank_lex_key(mask: int, rank: int) -> tuple[int, tuple[int, ...]]:
    """
    Sort key ordering flats by rank, then lexicographically.

    Args:
        mask: Bitset of the flat
        rank: Rank of the flat

    Returns:
        tuple: ``(rank, lex_key(mask))``
    """
    return (rank, lex_key(mask))


def to_one_based(mask: int) -> list[int]:
    """Inverse of :func:`from_one_based`: ascending 1-based labels."""
    return [i + 1 for i in indices(mask)]


def from_one_based(elements: Iterable[int], n: int) -> int:
    """Convert a list of 1-based element labels to a bitset.

    Raises:
        ValueError: If an element lies outside 1..n.
    """
    mask = 0
    for e in elements:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise ValueError(f"Element {e!r} outside ground set 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def maximal_members(members: Sequence[int]) -> list[int]:
    """Return the inclusion-maximal members (deduplicated, canonical order)."""
    unique = sorted(set(members), key=lambda m: (-popcount(m), lex_key(m)))
    kept: list[int] = []
    for m in unique:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return sorted(kept, key=lex_key)


@dataclass(frozen=True)
class SetFamily:
    """Ordered list of subsets of [n] stored as bitsets.

    Attributes:
        n: Size of the ground set.
        members: Bitsets, in the order they were supplied.
    """

    n: int
    members: tuple[int, ...]

    @classmethod
    def from_lists(cls, n: int, lists: Iterable[Iterable[int]]) -> SetFamily:
        """Build a family from 1-based element lists."""
        return cls(n=n, members=tuple(from_one_based(lst, n) for lst in lists))

    def to_lists(self) -> list[list[int]]:
        return [to_one_based(m) for m in self.members]

    def maximal(self) -> SetFamily:
        """Family of the inclusion-maximal members."""
        return SetFamily(n=self.n, members=tuple(maximal_members(self.members)))

    def union(self) -> int:
        """Bitset union of all members (0 for an empty family)."""
        out = 0
        for m in self.members:
            out |= m
        return out

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)
