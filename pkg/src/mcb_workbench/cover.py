"""Exact set-cover search and the MCB(a) decision engine.

MCB(a) fails exactly when, for some element p, at most a members avoiding p
have union [n] \\ {p}. Members may repeat, so only covers of size <= a matter,
and every member can be swapped for an inclusion-maximal p-avoiding superset.
The search is therefore a minimum set cover over maximal members.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import ceil

from loguru import logger

from .bitsets import SetFamily, bit, full_mask, indices, lex_key, maximal_members, popcount
from .matroid import Matroid
from .models import McbProfile, McbReport, McbWitness


@dataclass(frozen=True)
class CoverResult:
    """Minimum cover; ``size`` None means no cover exists (infinity)."""

    size: int | None
    cover: tuple[int, ...] = ()

    @property
    def found(self) -> bool:
        return self.size is not None


NO_COVER = CoverResult(size=None)


def _canonical(members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(members, key=lex_key))


class _CoverSearch:
    """Branch-and-bound over one universe.

    Candidates are restricted to the universe, reduced to maximal ones and
    ordered largest first (ties lexicographic). Branching happens on the
    uncovered element with the fewest candidates.
    """

    def __init__(
        self, universe: int, candidates: Sequence[int], antichain: bool = False
    ) -> None:
        restricted = [c & universe for c in candidates]
        pool = list(dict.fromkeys(restricted)) if antichain else maximal_members(restricted)
        self.universe = universe
        self.candidates = sorted(pool, key=lambda c: (-popcount(c), lex_key(c)))
        self.containing: dict[int, list[int]] = {e: [] for e in indices(universe)}
        for c in self.candidates:
            for e in indices(c):
                self.containing[e].append(c)
        self.reach: dict[int, int] = {}
        for e, cands in self.containing.items():
            acc = 0
            for c in cands:
                acc |= c
            self.reach[e] = acc
        self.nodes = 0
        self.best: list[int] | None = None
        self.best_size = 0

    def greedy(self) -> list[int]:
        uncovered = self.universe
        chosen: list[int] = []
        while uncovered:
            best = max(self.candidates, key=lambda c: popcount(c & uncovered))
            if not best & uncovered:
                return []
            chosen.append(best)
            uncovered &= ~best
        return chosen

    def lower_bound(self, uncovered: int) -> int:
        elements = sorted(indices(uncovered), key=lambda e: len(self.containing[e]))
        packed = 0
        blocked = 0
        for e in elements:
            if not blocked & bit(e):
                packed += 1
                blocked |= self.reach[e]
        weight = Fraction(0)
        for e in elements:
            best = max(popcount(c & uncovered) for c in self.containing[e])
            weight += Fraction(1, best)
        return max(packed, ceil(weight))

    def solve(self, limit: int | None = None) -> CoverResult:
        if self.universe == 0:
            return CoverResult(1, (self.candidates[0],)) if self.candidates else NO_COVER
        covered = 0
        for c in self.candidates:
            covered |= c
        if covered != self.universe:
            return NO_COVER

        greedy = self.greedy()
        if limit is None or len(greedy) <= limit:
            self.best = list(greedy)
            self.best_size = len(greedy)
        else:
            self.best = None
            self.best_size = limit + 1

        self._search(self.universe, [])
        logger.debug(
            f"Cover search: {len(self.candidates)} candidates, {self.nodes} nodes, "
            f"best={self.best_size if self.best is not None else 'none'}"
        )
        if self.best is None:
            return NO_COVER
        return CoverResult(len(self.best), _canonical(self.best))

    def _search(self, uncovered: int, chosen: list[int]) -> None:
        self.nodes += 1
        if not uncovered:
            if len(chosen) < self.best_size:
                self.best = list(chosen)
                self.best_size = len(chosen)
            return
        if len(chosen) + self.lower_bound(uncovered) >= self.best_size:
            return

        pivot = min(indices(uncovered), key=lambda e: len(self.containing[e]))
        options: list[tuple[int, int]] = []
        for c in self.containing[pivot]:
            part = c & uncovered
            if any(part & o == part for o, _ in options):
                continue
            options = [(o, oc) for o, oc in options if o & part != o]
            options.append((part, c))
        options.sort(key=lambda item: (-popcount(item[0]), lex_key(item[1])))
        for part, c in options:
            chosen.append(c)
            self._search(uncovered & ~part, chosen)
            chosen.pop()
            if len(chosen) + 1 >= self.best_size:
                return


def minimum_cover(
    universe: int,
    candidates: Sequence[int],
    limit: int | None = None,
    antichain: bool = False,
) -> CoverResult:
    """Exact minimum number of candidates whose union contains ``universe``.

    Args:
        universe: Bitset to cover.
        candidates: Bitsets; only their part inside the universe matters.
        limit: When given, covers larger than ``limit`` are reported as absent.
        antichain: Candidates are already pairwise incomparable inside the universe.
    """
    return _CoverSearch(universe, candidates, antichain).solve(limit)


def brute_force_min_cover(universe: int, candidates: Sequence[int]) -> CoverResult:
    """Reference oracle: try every subset of candidates by increasing size."""
    pool = list(dict.fromkeys(c & universe for c in candidates))
    for k in range(1, len(pool) + 1):
        for combo in combinations(pool, k):
            union = 0
            for c in combo:
                union |= c
            if union == universe:
                return CoverResult(k, _canonical(combo))
    return NO_COVER


def avoiding_members(family: Iterable[int], p: int) -> list[int]:
    """Maximal members of ``family`` not containing element p (0-based)."""
    return maximal_members([m for m in family if not m & bit(p)])


def min_cover_avoiding(n: int, family: SetFamily | Sequence[int], p: int) -> CoverResult:
    """Minimum number of p-avoiding members whose union is exactly [n] \\ {p}."""
    members = family.members if isinstance(family, SetFamily) else family
    universe = full_mask(n) & ~bit(p)
    return minimum_cover(universe, avoiding_members(members, p))


def _matroid_candidates(matroid: Matroid, p: int) -> list[int]:
    # Maximal p-avoiding proper flats are the hyperplanes avoiding p.
    return [h for h in matroid.hyperplanes() if not h & bit(p)]


def is_mcb(matroid: Matroid, a: int) -> McbReport:
    """Decide MCB(a) for a matroid; the first failing p is searched from n down to 1."""
    if a < 1:
        raise ValueError(f"MCB degree must be at least 1, got {a}")
    for p in range(matroid.n - 1, -1, -1):
        universe = matroid.ground & ~bit(p)
        result = minimum_cover(
            universe, _matroid_candidates(matroid, p), limit=a, antichain=True
        )
        if result.found:
            witness = McbWitness(missing=p, cover=result.cover)
            logger.debug(f"MCB({a}) fails: {witness}")
            return McbReport(holds=False, degree_queried=a, witness=witness)
    return McbReport(holds=True, degree_queried=a)


def _best_over_elements(
    covers: Iterable[tuple[int, CoverResult]],
) -> tuple[int | None, McbWitness | None]:
    best: int | None = None
    witness: McbWitness | None = None
    for p, result in covers:
        if result.size is not None and (best is None or result.size < best):
            best = result.size
            witness = McbWitness(missing=p, cover=result.cover)
    return best, witness


def min_failure_degree(matroid: Matroid) -> int | None:
    """Least a with MCB(a) failing, None for infinity."""
    return matroid_profile(matroid).min_failure_degree


def min_nontrivial_degree(matroid: Matroid) -> int | None:
    """Least a such that a proper flats contain [n] \\ {p} for some p."""
    hyperplanes = matroid.hyperplanes()
    best: int | None = None
    for p in range(matroid.n - 1, -1, -1):
        result = minimum_cover(matroid.ground & ~bit(p), hyperplanes)
        if result.size is not None and (best is None or result.size < best):
            best = result.size
    return best


def matroid_profile(matroid: Matroid) -> McbProfile:
    failure, witness = _best_over_elements(
        (
            (
                p,
                minimum_cover(
                    matroid.ground & ~bit(p), _matroid_candidates(matroid, p), antichain=True
                ),
            )
            for p in range(matroid.n - 1, -1, -1)
        ),
    )
    return McbProfile(
        min_failure_degree=failure,
        min_nontrivial_degree=min_nontrivial_degree(matroid),
        failure_witness=witness,
    )


def mcb_for_family(n: int, family: Sequence[int], a: int) -> McbReport:
    """MCB(a) over an arbitrary family of proper subsets of [n]."""
    if a < 1:
        raise ValueError(f"MCB degree must be at least 1, got {a}")
    for p in range(n - 1, -1, -1):
        result = minimum_cover(full_mask(n) & ~bit(p), avoiding_members(family, p), limit=a)
        if result.found:
            return McbReport(
                holds=False, degree_queried=a, witness=McbWitness(missing=p, cover=result.cover)
            )
    return McbReport(holds=True, degree_queried=a)


def family_profile(n: int, family: Sequence[int]) -> McbProfile:
    """Failure and nontrivial degrees over a family of proper subsets of [n]."""
    failure, witness = _best_over_elements(
        ((p, min_cover_avoiding(n, family, p)) for p in range(n - 1, -1, -1)),
    )
    maximal = maximal_members(family)
    nontrivial: int | None = None
    for p in range(n - 1, -1, -1):
        result = minimum_cover(full_mask(n) & ~bit(p), maximal)
        if result.size is not None and (nontrivial is None or result.size < nontrivial):
            nontrivial = result.size
    return McbProfile(
        min_failure_degree=failure,
        min_nontrivial_degree=nontrivial,
        failure_witness=witness,
    )
