"""Matroids represented by their complete family of flats.

Flats are bitsets over [n] (see :mod:`mcb_workbench.bitsets`). A validated
:class:`Matroid` keeps its flats in canonical (rank, lexicographic) order and
answers closure, rank, hyperplane and lattice queries from that list.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx
from loguru import logger

from .bitsets import SetFamily, bit, full_mask, indices, lex_key, mask_of, popcount, to_one_based
from .polynomial import IntPolynomial


class MatroidError(ValueError):
    """Base exception for matroid validation errors."""

    pass


class ElementOutOfRange(MatroidError):
    """A flat or edge mentions an element outside the ground set."""

    pass


class MissingTop(MatroidError):
    """The ground set E is not among the flats."""

    pass


class NotIntersectionClosed(MatroidError):
    """The intersection of two flats is not a flat."""

    pass


class BadPartition(MatroidError):
    """The flats covering some flat F do not partition E \\ F."""

    pass


class InconsistentRanks(MatroidError):
    """Rank does not grow by exactly one along a covering relation."""

    pass


class DuplicateEdge(MatroidError):
    """A graph lists the same unordered vertex pair twice."""

    pass


class SelfLoop(MatroidError):
    """A graph edge joins a vertex to itself."""

    pass


def _fail(error: type[MatroidError], message: str) -> MatroidError:
    logger.error(message)
    return error(message)


@dataclass(frozen=True)
class Matroid:
    """Validated matroid on ground set [n].

    Attributes:
        n: Number of elements (0-based internally, 1-based in every output).
        flats: All flats in canonical (rank, lexicographic) order.
        ranks: Rank of each flat, parallel to ``flats``.
    """

    MAX_ELEMENTS = 128

    n: int
    flats: tuple[int, ...]
    ranks: tuple[int, ...]
    _index: dict[int, int] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index.update({f: i for i, f in enumerate(self.flats)})

    @classmethod
    def trusted(cls, n: int, rank_of_flat: dict[int, int]) -> Matroid:
        """Build a matroid from flats already known to satisfy the axioms."""
        ordered = sorted(rank_of_flat, key=lambda f: (rank_of_flat[f], lex_key(f)))
        return cls(
            n=n,
            flats=tuple(ordered),
            ranks=tuple(rank_of_flat[f] for f in ordered),
            _index={f: i for i, f in enumerate(ordered)},
        )

    @property
    def ground(self) -> int:
        return full_mask(self.n)

    @property
    def rank(self) -> int:
        return self.ranks[-1]

    @property
    def bottom(self) -> int:
        return self.flats[0]

    @property
    def loops(self) -> int:
        return self.flats[0]

    def is_loopless(self) -> bool:
        return self.flats[0] == 0

    def is_flat(self, mask: int) -> bool:
        return mask in self._index

    def index_of(self, flat: int) -> int:
        """Position of ``flat`` in :attr:`flats`; raises KeyError for a non-flat."""
        return self._index[flat]

    def rank_of_flat(self, flat: int) -> int:
        return self.ranks[self._index[flat]]

    def closure(self, mask: int) -> int:
        """Smallest flat containing ``mask`` (intersection of all flats above it)."""
        if mask in self._index:
            return mask
        out = self.ground
        for f in self.flats:
            if f & mask == mask:
                out &= f
        return out

    def rank_of(self, mask: int) -> int:
        """
        Rank of an arbitrary subset.

        Args:
            mask: Bitset of 0-based elements, not necessarily a flat

        Returns:
            int: Rank of the closure of ``mask``
        """
        return self.rank_of_flat(self.closure(mask))

    def flats_of_rank(self, r: int) -> list[int]:
        """Flats of rank ``r``, in the matroid's (rank, lex) order."""
        return [f for f, k in zip(self.flats, self.ranks, strict=True) if k == r]

    def hyperplanes(self) -> list[int]:
        """Flats of rank r - 1; empty for a rank-0 matroid."""
        if self.rank == 0:
            return []
        return self.flats_of_rank(self.rank - 1)

    def proper_flats(self) -> list[int]:
        return [f for f in self.flats if f != self.ground]

    def restrict_flats(self, mask: int) -> list[int]:
        """
        Flats of the restriction of the matroid to ``mask``.

        Every flat of M|S is F & S for some flat F of M, so the intersections
        are collected and deduplicated.

        Args:
            mask: Bitset S of the elements kept

        Returns:
            list[int]: Distinct bitsets F & S, in lexicographic order
        """
        return sorted({f & mask for f in self.flats}, key=lex_key)

    def flat_family(self) -> SetFamily:
        return SetFamily(n=self.n, members=self.flats)

    def to_descriptor(self) -> dict[str, object]:
        """Input descriptor of ``flats`` type, with 1-based element lists."""
        return {"type": "flats", "n": self.n, "flats": [to_one_based(f) for f in self.flats]}

    def __str__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank}, flats={len(self.flats)})"


def _check_ground(n: int) -> None:
    if not 1 <= n <= Matroid.MAX_ELEMENTS:
        raise _fail(
            ElementOutOfRange, f"Ground set size {n} outside 1..{Matroid.MAX_ELEMENTS}"
        )


def _upper_covers(flat: int, flats_by_size: Sequence[int]) -> list[int]:
    covers: list[int] = []
    for g in flats_by_size:
        if g != flat and g & flat == flat and not any(g & c == c for c in covers):
            covers.append(g)
    return covers


def matroid_from_flats(n: int, flats: SetFamily | Iterable[int]) -> Matroid:
    """Validate a flat family and compute ranks by longest-chain depth.

    Args:
        n: Ground set size.
        flats: Bitsets of every flat (a SetFamily or raw masks).

    Returns:
        The validated matroid.

    Raises:
        ElementOutOfRange: A flat leaves [n].
        MissingTop: E is absent.
        NotIntersectionClosed: Two flats meet in a non-flat.
        BadPartition: The covers of some flat do not partition its complement.
        InconsistentRanks: Some cover skips a rank.
    """
    _check_ground(n)
    ground = full_mask(n)
    members = flats.members if isinstance(flats, SetFamily) else tuple(flats)
    unique = set(members)
    for f in unique:
        if f & ~ground or f < 0:
            raise _fail(ElementOutOfRange, f"Flat {indices(f)} leaves the ground set of size {n}")
    if ground not in unique:
        raise _fail(MissingTop, f"The ground set {to_one_based(ground)} is not a flat")

    by_size = sorted(unique, key=lambda f: (popcount(f), lex_key(f)))
    for a, b in combinations(by_size, 2):
        if a & b not in unique:
            raise _fail(
                NotIntersectionClosed,
                f"Intersection of {to_one_based(a)} and {to_one_based(b)} is not a flat",
            )

    covers = {f: _upper_covers(f, by_size) for f in by_size}
    for f in by_size:
        if f == ground:
            continue
        seen = 0
        for g in covers[f]:
            part = g & ~f
            if part & seen:
                raise _fail(
                    BadPartition,
                    f"Flats covering {to_one_based(f)} overlap outside it",
                )
            seen |= part
        if seen != ground & ~f:
            raise _fail(
                BadPartition,
                f"Flats covering {to_one_based(f)} miss elements "
                f"{to_one_based(ground & ~f & ~seen)}",
            )

    depth: dict[int, int] = {by_size[0]: 0}
    for f in by_size:
        for g in covers[f]:
            depth[g] = max(depth.get(g, 0), depth[f] + 1)
    for f in by_size:
        for g in covers[f]:
            if depth[g] != depth[f] + 1:
                raise _fail(
                    InconsistentRanks,
                    f"Cover {to_one_based(f)} < {to_one_based(g)} jumps from rank "
                    f"{depth[f]} to {depth[g]}",
                )

    matroid = Matroid.trusted(n, depth)
    logger.debug(f"Validated {matroid}")
    return matroid


def matroid_from_closure(n: int, closure: Callable[[int], int]) -> Matroid:
    """Enumerate flats layer by layer from a closure operator.

    Rank-k flats are exactly the closures of F + e for rank-(k-1) flats F,
    so the layer index is the rank.
    """
    _check_ground(n)
    ground = full_mask(n)
    layer = {closure(0)}
    rank_of_flat: dict[int, int] = {}
    r = 0
    while layer:
        for f in layer:
            rank_of_flat[f] = r
        nxt: set[int] = set()
        for f in layer:
            outside = ground & ~f
            while outside:
                low = outside & -outside
                g = closure(f | low)
                nxt.add(g)
                outside &= ~g
        layer = nxt
        r += 1
    return Matroid.trusted(n, rank_of_flat)


def uniform_matroid(r: int, n: int) -> Matroid:
    """U_{r,n}: flats are all sets of size < r together with E."""
    _check_ground(n)
    if not 0 <= r <= n:
        raise _fail(MatroidError, f"Uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    rank_of_flat = {full_mask(n): r}
    for size in range(r):
        for combo in combinations(range(n), size):
            rank_of_flat[mask_of(combo)] = size
    return Matroid.trusted(n, rank_of_flat)


def boolean_matroid(n: int) -> Matroid:
    """Free matroid U(n, n): every subset is a flat."""
    return uniform_matroid(n, n)


def direct_sum(first: Matroid, second: Matroid) -> Matroid:
    """Direct sum; elements of ``second`` are shifted past those of ``first``."""
    shift = first.n
    rank_of_flat = {
        f | (g << shift): rf + rg
        for f, rf in zip(first.flats, first.ranks, strict=True)
        for g, rg in zip(second.flats, second.ranks, strict=True)
    }
    return Matroid.trusted(first.n + second.n, rank_of_flat)


def graphic_closure(vertices: int, edges: Sequence[tuple[int, int]]) -> Callable[[int], int]:
    """Closure operator of the cycle matroid: edges inside one component of (V, S)."""

    def closure(mask: int) -> int:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, vertices + 1))
        graph.add_edges_from(edges[i] for i in indices(mask))
        component_of: dict[int, int] = {}
        for label, component in enumerate(nx.connected_components(graph)):
            for v in component:
                component_of[v] = label
        return mask_of(
            i for i, (u, v) in enumerate(edges) if component_of[u] == component_of[v]
        )

    return closure


def validate_graph(vertices: int, edges: Sequence[Sequence[int]]) -> list[tuple[int, int]]:
    """Check a simple graph given by 1-based vertex pairs; return normalized edges."""
    if vertices < 1:
        raise _fail(MatroidError, f"Graph needs at least one vertex, got {vertices}")
    seen: set[frozenset[int]] = set()
    normalized: list[tuple[int, int]] = []
    for edge in edges:
        if len(edge) != 2:
            raise _fail(MatroidError, f"Edge {list(edge)} is not a vertex pair")
        u, v = int(edge[0]), int(edge[1])
        if not (1 <= u <= vertices and 1 <= v <= vertices):
            raise _fail(ElementOutOfRange, f"Edge ({u}, {v}) leaves vertex range 1..{vertices}")
        if u == v:
            raise _fail(SelfLoop, f"Self-loop at vertex {u}")
        key = frozenset((u, v))
        if key in seen:
            raise _fail(DuplicateEdge, f"Edge ({u}, {v}) listed twice")
        seen.add(key)
        normalized.append((u, v))
    return normalized


def matroid_from_graph(vertices: int, edges: Sequence[Sequence[int]]) -> Matroid:
    """Cycle matroid of a simple graph; element i is the i-th edge."""
    normalized = validate_graph(vertices, edges)
    if not normalized:
        raise _fail(MatroidError, "Graph has no edges, so its cycle matroid is empty")
    matroid = matroid_from_closure(len(normalized), graphic_closure(vertices, normalized))
    logger.debug(f"Graphic matroid on {vertices} vertices: {matroid}")
    return matroid


@dataclass(frozen=True)
class FlatLattice:
    """Lattice of flats with covering relations and Möbius values mu(0, F).

    Attributes:
        elements: Flats in canonical order.
        ranks: Rank of each flat.
        covers: For each flat, indices of the flats covering it.
        mobius: mu(bottom, F) for each flat.
    """

    elements: tuple[int, ...]
    ranks: tuple[int, ...]
    covers: tuple[tuple[int, ...], ...]
    mobius: tuple[int, ...]

    @property
    def top_mobius(self) -> int:
        return self.mobius[-1]

    def mobius_of(self, flat: int) -> int:
        """Möbius value mu(bottom, flat); raises ValueError for a non-flat."""
        return self.mobius[self.elements.index(flat)]


def mobius_and_lattice(matroid: Matroid) -> FlatLattice:
    """Covering relations (via closures of F + e) and Möbius values by recursion."""
    covers: list[tuple[int, ...]] = []
    for f in matroid.flats:
        ups: set[int] = set()
        outside = matroid.ground & ~f
        while outside:
            low = outside & -outside
            g = matroid.closure(f | low)
            ups.add(matroid.index_of(g))
            outside &= ~g
        covers.append(tuple(sorted(ups)))

    mobius: list[int] = []
    for i, f in enumerate(matroid.flats):
        if i == 0:
            mobius.append(1)
            continue
        mobius.append(-sum(mobius[j] for j in range(i) if matroid.flats[j] & f == matroid.flats[j]))
    return FlatLattice(
        elements=matroid.flats,
        ranks=matroid.ranks,
        covers=tuple(covers),
        mobius=tuple(mobius),
    )


def characteristic_polynomial(matroid: Matroid) -> IntPolynomial:
    """chi(t) = sum over flats of mu(0, F) t^(rank M - rank F); zero if M has loops."""
    if not matroid.is_loopless():
        logger.debug("Matroid has loops; characteristic polynomial is 0")
        return IntPolynomial.zero()
    lattice = mobius_and_lattice(matroid)
    coeffs = [0] * (matroid.rank + 1)
    for mu, r in zip(lattice.mobius, lattice.ranks, strict=True):
        coeffs[matroid.rank - r] += mu
    return IntPolynomial(tuple(coeffs))


def greedy_basis(matroid: Matroid) -> int:
    """
    Basis picked greedily in element order.

    Args:
        matroid: Matroid to scan

    Returns:
        int: Bitset of the lexicographically first basis
    """
    basis = 0
    for e in range(matroid.n):
        if matroid.rank_of(basis | bit(e)) > popcount(basis):
            basis |= bit(e)
    return basis


def connected_components(matroid: Matroid) -> list[int]:
    """Partition of [n] into connected components, in lexicographic order.

    Elements are joined along fundamental circuits of one greedy basis; the
    resulting classes are then confirmed to be separators.
    """
    basis = greedy_basis(matroid)
    size = popcount(basis)
    graph = nx.Graph()
    graph.add_nodes_from(range(matroid.n))
    for e in range(matroid.n):
        if basis & bit(e):
            continue
        for b in indices(basis):
            if matroid.rank_of((basis & ~bit(b)) | bit(e)) == size:
                graph.add_edge(e, b)

    components = sorted((mask_of(c) for c in nx.connected_components(graph)), key=lex_key)
    total = matroid.rank
    for comp in components:
        if matroid.rank_of(comp) + matroid.rank_of(matroid.ground & ~comp) != total:
            raise _fail(MatroidError, f"Component {to_one_based(comp)} is not a separator")
    return components


def component_count(matroid: Matroid) -> int:
    """Number of connected components; loops and coloops each count as one."""
    return len(connected_components(matroid))
