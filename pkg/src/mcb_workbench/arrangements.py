"""Central hyperplane arrangements over the rationals.

Hyperplanes are stored by primitive integer normal vectors, so two hyperplanes
are equal exactly when their normals coincide after normalization. Everything
below (the intersection matroid, supersolvable chains, region counts and the
pencil extension) is exact.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx
from loguru import logger

from .bitsets import bit, indices, maximal_members, popcount, to_one_based
from .cover import is_mcb, matroid_profile, minimum_cover
from .linalg import cross, dot, integer_row, rank, rowspace_equal, rref
from .matroid import Matroid, characteristic_polynomial, matroid_from_closure, validate_graph
from .models import McbReport
from .polynomial import IntPolynomial


class ArrangementError(ValueError):
    """Base exception for arrangement errors."""

    pass


class DuplicateHyperplane(ArrangementError):
    pass


class ZeroNormal(ArrangementError):
    pass


class TooLarge(ArrangementError):
    """Essential rank above what the region counter handles."""

    pass


class BadSubspace(ArrangementError):
    """The pencil axis violates the containment preconditions."""

    pass


class NotSupersolvable(ArrangementError):
    pass


def _fail(error: type[ArrangementError], message: str) -> ArrangementError:
    logger.error(message)
    return error(message)


Normal = tuple[int, ...]


@dataclass(frozen=True)
class Arrangement:
    """Central arrangement in Q^dim.

    Attributes:
        dim: Ambient dimension d.
        normals: Primitive integer normals, one per hyperplane, in input order.
    """

    dim: int
    normals: tuple[Normal, ...]

    @classmethod
    def from_normals(cls, normals: Sequence[Sequence[int | Fraction]]) -> Arrangement:
        """Normalize and validate rational normal vectors.

        Raises:
            ArrangementError: No hyperplanes, or vectors of different lengths.
            ZeroNormal: A normal vector is zero.
            DuplicateHyperplane: Two normals are scalar multiples.
        """
        if not normals:
            raise _fail(ArrangementError, "An arrangement needs at least one hyperplane")
        dim = len(normals[0])
        seen: dict[Normal, int] = {}
        out: list[Normal] = []
        for i, vector in enumerate(normals):
            if len(vector) != dim:
                raise _fail(
                    ArrangementError,
                    f"Hyperplane {i + 1} has {len(vector)} coordinates, expected {dim}",
                )
            if not any(vector):
                raise _fail(ZeroNormal, f"Hyperplane {i + 1} has a zero normal")
            normal = integer_row(vector)
            if normal in seen:
                raise _fail(
                    DuplicateHyperplane,
                    f"Hyperplanes {seen[normal] + 1} and {i + 1} coincide",
                )
            seen[normal] = i
            out.append(normal)
        return cls(dim=dim, normals=tuple(out))

    def __len__(self) -> int:
        return len(self.normals)

    @property
    def rank(self) -> int:
        return rank(self.normals)

    def is_essential(self) -> bool:
        return self.rank == self.dim

    def lifted(self) -> Arrangement:
        """The same hyperplanes in Q^(dim + 1), with a zero last coordinate."""
        return Arrangement(dim=self.dim + 1, normals=tuple((*n, 0) for n in self.normals))

    def essentialized(self) -> Arrangement:
        """Normals rewritten in coordinates of their span, so that rank == dim."""
        _, pivots = rref(self.normals)
        return Arrangement(
            dim=len(pivots),
            normals=tuple(integer_row([n[p] for p in pivots]) for n in self.normals),
        )

    def restrict(self, mask: int) -> Arrangement:
        return Arrangement(dim=self.dim, normals=tuple(self.normals[i] for i in indices(mask)))

    def to_descriptor(self) -> dict[str, object]:
        return {
            "type": "arrangement",
            "dim": self.dim,
            "normals": [[str(x) for x in n] for n in self.normals],
        }

    def __str__(self) -> str:
        return f"Arrangement(dim={self.dim}, hyperplanes={len(self.normals)})"


def coordinate_arrangement(dim: int) -> Arrangement:
    return Arrangement.from_normals(
        [[1 if j == i else 0 for j in range(dim)] for i in range(dim)]
    )


def braid_arrangement(n: int) -> Arrangement:
    """x_i = x_j in Q^n, hyperplanes in the order of combinations(range(n), 2)."""
    normals = []
    for i, j in combinations(range(n), 2):
        vector = [0] * n
        vector[i], vector[j] = 1, -1
        normals.append(vector)
    return Arrangement.from_normals(normals)


def graphic_arrangement(vertices: int, edges: Sequence[Sequence[int]]) -> Arrangement:
    """x_u = x_v for every edge (u, v); hyperplane i is edge i."""
    normals = []
    for u, v in validate_graph(vertices, edges):
        vector = [0] * vertices
        vector[u - 1], vector[v - 1] = 1, -1
        normals.append(vector)
    return Arrangement.from_normals(normals)


def pencil_arrangement(k: int) -> Arrangement:
    """k distinct lines through the origin of Q^2."""
    if k < 1:
        raise _fail(ArrangementError, f"A pencil needs at least one line, got {k}")
    return Arrangement.from_normals([[1, j] for j in range(k)])


def _reduces_to_zero(
    vector: Sequence[int], basis: Sequence[Sequence[Fraction]], pivots: Sequence[int]
) -> bool:
    current = [Fraction(x) for x in vector]
    for row, p in zip(basis, pivots, strict=True):
        factor = current[p]
        if factor:
            current = [a - factor * b for a, b in zip(current, row, strict=True)]
    return not any(current)


def intersection_matroid(arrangement: Arrangement) -> Matroid:
    """Linear matroid of the normals: flats are maximal index sets with a common intersection."""
    normals = arrangement.normals

    def closure(mask: int) -> int:
        basis, pivots = rref([normals[i] for i in indices(mask)]) if mask else ([], [])
        out = 0
        for j, normal in enumerate(normals):
            if mask & bit(j) or _reduces_to_zero(normal, basis, pivots):
                out |= bit(j)
        return out

    matroid = matroid_from_closure(len(normals), closure)
    logger.debug(f"Intersection matroid of {arrangement}: {matroid}")
    return matroid


@dataclass(frozen=True)
class RegionCount:
    """Regions of the complement, once from chi(-1) and once geometrically."""

    chi_value: int
    euler_count: int

    @property
    def agree(self) -> bool:
        return self.chi_value == self.euler_count

    def to_dict(self) -> dict[str, object]:
        return {
            "chi_at_minus_one": self.chi_value,
            "euler_count": self.euler_count,
            "agree": self.agree,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["chi_at_minus_one", "euler_count", "agree"]

    def to_tsv_row(self) -> list[str]:
        return [str(self.chi_value), str(self.euler_count), str(self.agree).lower()]


class RegionCounter:
    """Counts regions of an essential arrangement of rank at most MAX_RANK.

    Rank 3 is counted on the unit sphere: every intersection line gives two
    vertices, every plane a great circle cut into as many arcs as it carries
    vertices, and faces follow from V - E + F = 2.
    """

    MAX_RANK = 3

    def __init__(self, arrangement: Arrangement) -> None:
        self.arrangement = arrangement.essentialized()
        if self.arrangement.dim > self.MAX_RANK:
            raise _fail(
                TooLarge,
                f"Region counting is limited to rank {self.MAX_RANK}, "
                f"got rank {self.arrangement.dim}",
            )

    def count(self) -> int:
        normals = self.arrangement.normals
        r = self.arrangement.dim
        if r == 1:
            return 2
        if r == 2:
            # k lines through the origin cut the circle into 2k arcs.
            return 2 * len(normals)
        lines_in_plane: list[set[Normal]] = [set() for _ in normals]
        lines: set[Normal] = set()
        for i, j in combinations(range(len(normals)), 2):
            direction = integer_row(cross(normals[i], normals[j]))
            lines.add(direction)
            for k, normal in enumerate(normals):
                if dot(normal, direction) == 0:
                    lines_in_plane[k].add(direction)
        vertices = 2 * len(lines)
        edges = sum(2 * len(on_plane) for on_plane in lines_in_plane)
        return 2 - vertices + edges


def regions_count(arrangement: Arrangement) -> RegionCount:
    """|chi(-1)| and the geometric count of regions.

    Raises:
        TooLarge: Essential rank above RegionCounter.MAX_RANK.
    """
    counter = RegionCounter(arrangement)
    chi = characteristic_polynomial(intersection_matroid(arrangement))
    result = RegionCount(chi_value=abs(chi.evaluate(-1)), euler_count=counter.count())
    if not result.agree:
        logger.warning(f"Region counts disagree for {arrangement}: {result.to_dict()}")
    return result


@dataclass(frozen=True)
class SupersolvableChain:
    """Modular chain V_1 < ... < V_r of flats (hyperplane index sets).

    Attributes:
        chain: Flats of rank 1..r, the last one being every hyperplane.
        e: e_i = |V_i \\ V_(i-1)|, the exponents of the characteristic polynomial.
    """

    chain: tuple[int, ...]
    e: tuple[int, ...]

    def splits(self) -> list[tuple[int, int]]:
        """(A_0, A_1) per level, top level first."""
        return [
            (self.chain[i - 1], self.chain[i] & ~self.chain[i - 1])
            for i in range(len(self.chain) - 1, 0, -1)
        ]

    def polynomial(self) -> IntPolynomial:
        return IntPolynomial.from_roots(self.e)

    def to_dict(self) -> dict[str, object]:
        return {
            "supersolvable": True,
            "e": list(self.e),
            "chain": [to_one_based(v) for v in self.chain],
            "polynomial": str(self.polynomial()),
        }

    def get_tsv_headers(self) -> list[str]:
        return ["supersolvable", "e", "chain"]

    def to_tsv_row(self) -> list[str]:
        return [
            "true",
            ",".join(map(str, self.e)),
            ";".join(",".join(map(str, to_one_based(v))) for v in self.chain),
        ]


class _ChainSearch:
    """Top-down search for a modular coatom at every level, memoized per flat."""

    def __init__(self, matroid: Matroid) -> None:
        self.matroid = matroid
        self.memo: dict[int, tuple[int, ...] | None] = {}

    def is_modular_coatom(self, flat: int, coatom: int) -> bool:
        outside = indices(flat & ~coatom)
        for a, b in combinations(outside, 2):
            if not self.matroid.closure(bit(a) | bit(b)) & coatom:
                return False
        return True

    def chain(self, flat: int) -> tuple[int, ...] | None:
        if flat in self.memo:
            return self.memo[flat]
        r = self.matroid.rank_of_flat(flat)
        result: tuple[int, ...] | None = None
        if r == 1:
            result = (flat,)
        elif r == 2:
            result = (self.matroid.closure(flat & -flat), flat)
        else:
            for coatom in self.matroid.flats_of_rank(r - 1):
                if coatom & flat != coatom or not self.is_modular_coatom(flat, coatom):
                    continue
                below = self.chain(coatom)
                if below is not None:
                    result = (*below, flat)
                    break
        self.memo[flat] = result
        return result


def supersolvable_decompose(arrangement: Arrangement) -> SupersolvableChain | None:
    """First modular chain in lexicographic coatom order, or None."""
    matroid = intersection_matroid(arrangement)
    chain = _ChainSearch(matroid).chain(matroid.ground)
    if chain is None:
        logger.debug(f"{arrangement} is not supersolvable")
        return None
    e = tuple(popcount(v & ~(chain[i - 1] if i else 0)) for i, v in enumerate(chain))
    return SupersolvableChain(chain=chain, e=e)


def mcs_order(graph: nx.Graph) -> list[int]:
    """Maximum cardinality search; ties go to the smallest vertex."""
    weight = {v: 0 for v in graph.nodes}
    order: list[int] = []
    while weight:
        v = min(weight, key=lambda x: (-weight[x], x))
        order.append(v)
        del weight[v]
        for u in graph.neighbors(v):
            if u in weight:
                weight[u] += 1
    return order


def is_chordal(graph: nx.Graph) -> bool:
    """Reversed MCS order is a perfect elimination ordering exactly for chordal graphs."""
    order = mcs_order(graph)
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in graph.neighbors(v) if position[u] < position[v]]
        for x, y in combinations(earlier, 2):
            if not graph.has_edge(x, y):
                return False
    return True


def graph_of(vertices: int, edges: Sequence[Sequence[int]]) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(1, vertices + 1))
    graph.add_edges_from(validate_graph(vertices, edges))
    return graph


@dataclass(frozen=True)
class GraphicMcbCheck:
    """Degree predicate on a graph next to the exact minimal failure degree."""

    predicate: bool
    min_failure_degree: int | None

    @property
    def agrees(self) -> bool:
        """The predicate asserts MCB(a) for every a, i.e. no failure degree."""
        return self.predicate == (self.min_failure_degree is None)

    def to_dict(self) -> dict[str, object]:
        return {
            "predicate": self.predicate,
            "min_failure_degree": self.min_failure_degree,
            "agrees": self.agrees,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["predicate", "min_failure_degree", "agrees"]

    def to_tsv_row(self) -> list[str]:
        failure = "inf" if self.min_failure_degree is None else str(self.min_failure_degree)
        return [str(self.predicate).lower(), failure, str(self.agrees).lower()]


def graphic_mcb_predicate(vertices: int, edges: Sequence[Sequence[int]]) -> GraphicMcbCheck:
    """Both endpoints of every edge have degree >= 2, plus the oracle failure degree."""
    graph = graph_of(vertices, edges)
    predicate = all(graph.degree(u) >= 2 and graph.degree(v) >= 2 for u, v in graph.edges)
    matroid = intersection_matroid(graphic_arrangement(vertices, edges))
    return GraphicMcbCheck(
        predicate=predicate, min_failure_degree=matroid_profile(matroid).min_failure_degree
    )


def _lift_if_essential(arrangement: Arrangement) -> Arrangement:
    return arrangement.lifted() if arrangement.is_essential() else arrangement


def _common_line(arrangement: Arrangement) -> tuple[Fraction, ...]:
    basis, pivots = rref(arrangement.normals)
    free = [c for c in range(arrangement.dim) if c not in pivots]
    if len(free) != 1:
        raise _fail(
            BadSubspace,
            f"Pencil extension needs rank dim - 1, got rank {len(pivots)} in dim {arrangement.dim}",
        )
    line = [Fraction(0)] * arrangement.dim
    line[free[0]] = Fraction(1)
    for row, p in zip(basis, pivots, strict=True):
        line[p] = -row[free[0]]
    return tuple(line)


def extend_by_pencil(
    base: Arrangement, u: Sequence[int], w: Sequence[int], count: int
) -> Arrangement:
    """Append ``count`` hyperplanes through the axis u^perp cap w^perp.

    An essential base is first lifted by one coordinate. The axis must lie in
    a hyperplane of the base and must not contain the common line of the base.
    New normals are k + j h for j = 0..count-1, where h is the combination of
    u and w orthogonal to the line.

    Raises:
        BadSubspace: Any containment precondition fails.
    """
    if count < 0:
        raise _fail(ArrangementError, f"Pencil size must be non-negative, got {count}")
    if count == 0:
        return base
    lifted = _lift_if_essential(base)
    if len(u) != lifted.dim or len(w) != lifted.dim:
        raise _fail(BadSubspace, f"Axis vectors must have {lifted.dim} coordinates")
    if rank([u, w]) != 2:
        raise _fail(BadSubspace, "Axis vectors must be linearly independent")
    if not any(rank([u, w, n]) == 2 for n in lifted.normals):
        raise _fail(BadSubspace, "The axis lies in no hyperplane of the base arrangement")
    line = _common_line(lifted)
    ul, wl = dot(u, line), dot(w, line)
    if ul == 0 and wl == 0:
        raise _fail(BadSubspace, "The axis contains the common line of the base arrangement")
    h = [wl * a - ul * b for a, b in zip(u, w, strict=True)]
    k = list(u) if ul != 0 else list(w)
    new = [[Fraction(x) + j * y for x, y in zip(k, h, strict=True)] for j in range(count)]
    result = Arrangement.from_normals([*lifted.normals, *new])
    logger.debug(f"Extended {base} by a pencil of {count}: {result}")
    return result


def pencil_axes(base: Arrangement) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every axis (u, w) accepted by :func:`extend_by_pencil` from a fixed direction set.

    u runs over the normals of the (lifted) base and w over coordinate
    directions, then sums of two of them, that do not vanish on the common
    line of the base.

    Args:
        base: Arrangement to be extended.

    Yields:
        Pairs of integer vectors in the dimension of the extension.
    """
    lifted = _lift_if_essential(base)
    line = _common_line(lifted)
    dim = lifted.dim
    directions = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    directions += [
        tuple(1 if j in (i, k) else 0 for j in range(dim)) for i, k in combinations(range(dim), 2)
    ]
    for u in lifted.normals:
        for w in directions:
            if dot(w, line) != 0 and rank([u, w]) == 2:
                yield u, w


def default_pencil(base: Arrangement) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Axis through the first hyperplane and a coordinate direction off the common line."""
    for axis in pencil_axes(base):
        return axis
    raise _fail(BadSubspace, f"No coordinate direction leaves the common line of {base}")


def check_pencil_invariant(base: Arrangement, extended: Arrangement) -> list[bool]:
    """For each added hyperplane R: R meets the base intersection exactly in the full one."""
    lifted = _lift_if_essential(base) if extended.dim != base.dim else base
    old = list(lifted.normals)
    added = extended.normals[len(old) :]
    return [rowspace_equal([*old, r], extended.normals) for r in added]


@dataclass(frozen=True)
class SupersolvableMcbCheck:
    """Direct MCB(a) report with the two split readings evaluated alongside.

    ``shared_holds``: members meeting A_1 also count toward covering A_0.
    ``disjoint_holds``: they only contribute their A_1 part.
    """

    report: McbReport
    shared_holds: bool
    disjoint_holds: bool

    @property
    def shared_agrees(self) -> bool:
        return self.shared_holds == self.report.holds

    @property
    def disjoint_agrees(self) -> bool:
        return self.disjoint_holds == self.report.holds

    def to_dict(self) -> dict[str, object]:
        return {
            **self.report.to_dict(),
            "shared_reading_holds": self.shared_holds,
            "disjoint_reading_holds": self.disjoint_holds,
            "shared_agrees": self.shared_agrees,
            "disjoint_agrees": self.disjoint_agrees,
        }

    def get_tsv_headers(self) -> list[str]:
        return [*self.report.get_tsv_headers(), "shared_agrees", "disjoint_agrees"]

    def to_tsv_row(self) -> list[str]:
        return [
            *self.report.to_tsv_row(),
            str(self.shared_agrees).lower(),
            str(self.disjoint_agrees).lower(),
        ]


class _SplitCover:
    """Minimum cover of [n] \\ {p} evaluated level by level along a modular chain."""

    def __init__(self, matroid: Matroid, chain: tuple[int, ...], shared: bool) -> None:
        self.matroid = matroid
        self.chain = chain
        self.shared = shared

    def _members(self, flat: int, p: int) -> list[int]:
        return [
            f
            for f in self.matroid.flats
            if f & flat == f and f and not f & bit(p) and f != self.matroid.ground
        ]

    def solve(self, level: int, universe: int, p: int, limit: int) -> int | None:
        if limit < 1:
            return None
        flat = self.chain[level]
        if level <= 1:
            return minimum_cover(universe, self._members(flat, p), limit=limit).size
        lower = self.chain[level - 1]
        upper = flat & ~lower
        meeting = maximal_members([f for f in self._members(flat, p) if f & upper])
        best: int | None = None
        if not universe & upper:
            best = self.solve(level - 1, universe, p, limit)
        for k in range(1, limit + 1):
            if best is not None and k >= best:
                break
            for combo in combinations(meeting, k):
                covered = 0
                for c in combo:
                    covered |= c if self.shared else c & upper
                if universe & upper & ~covered:
                    continue
                residual = universe & ~covered & lower
                if residual == 0:
                    total: int | None = k
                else:
                    cap = (best - 1 if best is not None else limit) - k
                    sub = self.solve(level - 1, residual, p, cap)
                    total = None if sub is None else k + sub
                if total is not None and (best is None or total < best):
                    best = total
        return best


def supersolvable_mcb_recursive(arrangement: Arrangement, a: int) -> SupersolvableMcbCheck:
    """MCB(a) by splitting covers along the modular chain, checked against the direct engine.

    Raises:
        NotSupersolvable: No modular chain exists.
    """
    chain = supersolvable_decompose(arrangement)
    if chain is None:
        raise _fail(NotSupersolvable, f"{arrangement} is not supersolvable")
    matroid = intersection_matroid(arrangement)
    report = is_mcb(matroid, a)
    readings: dict[bool, bool] = {}
    for shared in (True, False):
        search = _SplitCover(matroid, chain.chain, shared)
        holds = True
        for p in range(matroid.n - 1, -1, -1):
            universe = matroid.ground & ~bit(p)
            if universe == 0:
                holds = report.holds
                break
            if search.solve(len(chain.chain) - 1, universe, p, a) is not None:
                holds = False
                break
        readings[shared] = holds
    check = SupersolvableMcbCheck(
        report=report, shared_holds=readings[True], disjoint_holds=readings[False]
    )
    logger.debug(f"Recursive MCB({a}) on {arrangement}: {check.to_dict()}")
    return check
