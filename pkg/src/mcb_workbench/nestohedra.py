"""Building sets on [n] and the MCB quantities of their nestohedra.

Only combinatorial surrogates of the polytopes are computed: maximal members,
intersection-graph components and the cover-based MCB degrees.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass

import networkx as nx
from loguru import logger

from .bitsets import SetFamily, bit, full_mask, lex_key, maximal_members, popcount, to_one_based
from .cover import family_profile, mcb_for_family
from .matroid import Matroid, component_count, direct_sum, uniform_matroid
from .models import McbProfile, McbReport


class BuildingSetError(ValueError):
    """Base exception for building set validation errors."""

    pass


class EmptyMember(BuildingSetError):
    pass


class MissingSingleton(BuildingSetError):
    pass


class NotUnionClosed(BuildingSetError):
    """Two intersecting members whose union is missing."""

    pass


class NotConnected(BuildingSetError):
    """The ground set [n] is not a member."""

    pass


def _fail(error: type[BuildingSetError], message: str) -> BuildingSetError:
    logger.error(message)
    return error(message)


def _canonical(members: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(members), key=lambda m: (popcount(m), lex_key(m))))


@dataclass(frozen=True)
class BuildingSet:
    """Validated building set; members in (size, lexicographic) order."""

    n: int
    members: tuple[int, ...]

    @classmethod
    def validated(cls, n: int, members: Iterable[int]) -> BuildingSet:
        """Check the building set axioms.

        Raises:
            EmptyMember: The empty set is listed.
            MissingSingleton: Some {i} is absent.
            NotUnionClosed: Two intersecting members have a missing union.
        """
        if n < 1:
            raise _fail(BuildingSetError, f"Ground set size must be positive, got {n}")
        pool = set(members)
        ground = full_mask(n)
        for m in pool:
            if m == 0:
                raise _fail(EmptyMember, "Building sets contain only nonempty members")
            if m & ~ground:
                raise _fail(BuildingSetError, f"Member leaves the ground set [{n}]")
        for i in range(n):
            if bit(i) not in pool:
                raise _fail(MissingSingleton, f"Singleton {{{i + 1}}} is missing")
        ordered = _canonical(pool)
        for x_pos, x in enumerate(ordered):
            for y in ordered[x_pos + 1 :]:
                if x & y and x | y not in pool:
                    raise _fail(
                        NotUnionClosed,
                        f"{to_one_based(x)} and {to_one_based(y)} meet but their union is missing",
                    )
        return cls(n=n, members=ordered)

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    def is_connected(self) -> bool:
        return self.ground in self.members

    def proper_members(self) -> list[int]:
        return [m for m in self.members if m != self.ground]

    def bmax(self) -> list[int]:
        """Maximal members of B \\ {[n]}."""
        return maximal_members(self.proper_members())

    def to_family(self) -> SetFamily:
        return SetFamily(n=self.n, members=self.members)

    def to_descriptor(self) -> dict[str, object]:
        return {
            "type": "building_set",
            "n": self.n,
            "members": [to_one_based(m) for m in self.members],
        }


def building_set_closure(n: int, family: SetFamily | Iterable[int]) -> BuildingSet:
    """Smallest building set containing ``family`` and all singletons.

    Raises:
        EmptyMember: The family contains the empty set.
    """
    members = family.members if isinstance(family, SetFamily) else tuple(family)
    if any(m == 0 for m in members):
        raise _fail(EmptyMember, "Cannot close a family containing the empty set")
    pool: set[int] = set(members) | {bit(i) for i in range(n)}
    queue = deque(_canonical(pool))
    while queue:
        x = queue.popleft()
        for y in list(pool):
            if x & y:
                union = x | y
                if union not in pool:
                    pool.add(union)
                    queue.append(union)
    closure = BuildingSet.validated(n, pool)
    logger.debug(f"Building set closure on [{n}]: {len(members)} -> {len(closure.members)} members")
    return closure


def bs_mcb(building_set: BuildingSet, a: int) -> McbReport:
    """MCB(a) with family B \\ {[n]}."""
    return mcb_for_family(building_set.n, building_set.proper_members(), a)


def bs_profile(building_set: BuildingSet) -> McbProfile:
    return family_profile(building_set.n, building_set.proper_members())


@dataclass(frozen=True)
class NestPredicate:
    """Per-member counts of maximal proper sub-members for each I in BMax."""

    holds: bool
    counts: tuple[tuple[int, int], ...]

    def to_dict(self) -> dict[str, object]:
        return {
            "holds": self.holds,
            "counts": [{"member": to_one_based(m), "count": c} for m, c in self.counts],
        }

    def get_tsv_headers(self) -> list[str]:
        return ["counts", "bmax_size", "holds"]

    def to_tsv_row(self) -> list[str]:
        members = ";".join(f"{','.join(map(str, to_one_based(m)))}:{c}" for m, c in self.counts)
        return [members, str(len(self.counts)), str(self.holds).lower()]


def _require_connected(building_set: BuildingSet) -> None:
    if not building_set.is_connected():
        raise _fail(NotConnected, f"[{building_set.n}] is not a member of the building set")


def nestmcb_predicate(building_set: BuildingSet) -> NestPredicate:
    """Every I in BMax has at least two maximal members strictly inside it."""
    _require_connected(building_set)
    counts: list[tuple[int, int]] = []
    for member in building_set.bmax():
        below = [j for j in building_set.members if j & member == j and j != member]
        counts.append((member, len(maximal_members(below))))
    return NestPredicate(holds=all(c >= 2 for _, c in counts), counts=tuple(counts))


@dataclass(frozen=True)
class ComponentCount:
    """Components c of the BMax intersection graph, and n - c."""

    components: int
    n: int

    @property
    def degree(self) -> int:
        return self.n - self.components

    def to_dict(self) -> dict[str, object]:
        return {"components": self.components, "n_minus_c": self.degree}

    def get_tsv_headers(self) -> list[str]:
        return ["components", "n_minus_c"]

    def to_tsv_row(self) -> list[str]:
        return [str(self.components), str(self.degree)]


def bs_components(building_set: BuildingSet) -> ComponentCount:
    _require_connected(building_set)
    graph = nx.Graph()
    maxima = building_set.bmax()
    graph.add_nodes_from(range(len(maxima)))
    for i, x in enumerate(maxima):
        for j in range(i + 1, len(maxima)):
            if x & maxima[j]:
                graph.add_edge(i, j)
    return ComponentCount(components=nx.number_connected_components(graph), n=building_set.n)


def matroid_surrogate(building_set: BuildingSet) -> Matroid | None:
    """Matroid whose base polytope is the nestohedron of B \\ {[n]}, when one is known.

    When BMax is pairwise disjoint and every other proper member is a singleton,
    the Minkowski sum is a product of simplices, i.e. the base polytope of the
    direct sum of U_{1,|I|} over I in BMax. Otherwise None.
    """
    maxima = building_set.bmax()
    if not maxima:
        return None
    for i, x in enumerate(maxima):
        if any(x & y for y in maxima[i + 1 :]):
            return None
    allowed = set(maxima)
    if any(popcount(m) > 1 and m not in allowed for m in building_set.proper_members()):
        return None
    pieces = sorted(maxima, key=lex_key)
    matroid = uniform_matroid(1, popcount(pieces[0]))
    for piece in pieces[1:]:
        matroid = direct_sum(matroid, uniform_matroid(1, popcount(piece)))
    return matroid


def surrogate_degree(building_set: BuildingSet) -> int | None:
    """n - c(M) for the matroid surrogate, or None when no surrogate applies."""
    matroid = matroid_surrogate(building_set)
    if matroid is None:
        return None
    return building_set.n - component_count(matroid)
