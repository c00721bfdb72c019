"""Projective line arrangements, t-vectors and the modular line families.

A line arrangement is kept as its incidence structure: for every intersection
point, the set of lines through it. Arrangements given by rational coefficient
triples compute their own incidences; the modular families are built straight
from incidence data so no roots of unity are ever needed.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from loguru import logger

from .bitsets import bit, full_mask, indices, lex_key, mask_of, popcount, to_one_based
from .linalg import cross, dot, integer_row
from .matroid import Matroid


class LineArrangementError(ValueError):
    """Base exception for line arrangement errors."""

    pass


class DuplicateLine(LineArrangementError):
    pass


class BadIncidence(LineArrangementError):
    """Some pair of lines does not meet in exactly one listed point."""

    pass


class BadParameters(LineArrangementError):
    pass


def _fail(error: type[LineArrangementError], message: str) -> LineArrangementError:
    logger.error(message)
    return error(message)


@dataclass(frozen=True)
class LineArrangement:
    """Lines 0..n_lines-1 and their intersection points.

    Attributes:
        n_lines: Number of lines.
        points: One bitset of incident lines per point, multiplicity >= 2.
        triples: Primitive coefficient triples when built from coordinates.
    """

    n_lines: int
    points: tuple[int, ...]
    triples: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def from_triples(cls, triples: Sequence[Sequence[int | Fraction]]) -> LineArrangement:
        """Lines a x + b y + c z = 0; points are computed by cross products.

        Raises:
            DuplicateLine: Two triples define the same line.
            LineArrangementError: A triple is zero or not of length 3.
        """
        lines: list[tuple[int, ...]] = []
        seen: dict[tuple[int, ...], int] = {}
        for i, triple in enumerate(triples):
            if len(triple) != 3 or not any(triple):
                raise _fail(LineArrangementError, f"Line {i + 1} is not a nonzero triple")
            line = integer_row(triple)
            if line in seen:
                raise _fail(DuplicateLine, f"Lines {seen[line] + 1} and {i + 1} coincide")
            seen[line] = i
            lines.append(line)
        points: set[int] = set()
        for i, j in combinations(range(len(lines)), 2):
            point = cross(lines[i], lines[j])
            points.add(mask_of(k for k, line in enumerate(lines) if dot(line, point) == 0))
        return cls(n_lines=len(lines), points=_ordered(points), triples=tuple(lines))

    @classmethod
    def from_incidences(cls, n_lines: int, points: Iterable[int]) -> LineArrangement:
        """Validate point-line incidences of an abstract arrangement.

        Raises:
            BadIncidence: A point has multiplicity below 2, leaves the line set,
                or some pair of lines meets in no point or in two points.
        """
        pool = _ordered(set(points))
        ground = full_mask(n_lines)
        met: set[tuple[int, int]] = set()
        for point in pool:
            if point & ~ground or popcount(point) < 2:
                raise _fail(BadIncidence, f"Point {to_one_based(point)} is not a valid point")
            for pair in combinations(indices(point), 2):
                if pair in met:
                    raise _fail(BadIncidence, f"Lines {pair[0] + 1}, {pair[1] + 1} meet twice")
                met.add(pair)
        if len(met) != comb(n_lines, 2):
            raise _fail(BadIncidence, "Some pair of lines has no intersection point")
        return cls(n_lines=n_lines, points=pool)

    @property
    def lines(self) -> int:
        return full_mask(self.n_lines)

    def is_pencil(self) -> bool:
        """All lines pass through one point."""
        return len(self.points) == 1 and self.points[0] == self.lines

    def matroid(self) -> Matroid:
        """Rank-3 matroid on the lines; points are the rank-2 flats.

        Concurrent arrangements drop to rank 2 and a single line to rank 1.
        """
        ground = self.lines
        if self.n_lines == 1:
            return Matroid.trusted(1, {0: 0, ground: 1})
        rank_of_flat: dict[int, int] = {0: 0}
        for i in range(self.n_lines):
            rank_of_flat[bit(i)] = 1
        if self.is_pencil():
            rank_of_flat[ground] = 2
        else:
            for point in self.points:
                rank_of_flat[point] = 2
            rank_of_flat[ground] = 3
        return Matroid.trusted(self.n_lines, rank_of_flat)

    def modular_points(self) -> list[int]:
        """Points joined to every other point by a line of the arrangement."""
        return [p for p in self.points if all(p & q for q in self.points)]

    def delete(self, removed: int) -> LineArrangement:
        """Arrangement of the remaining lines, renumbered in order."""
        keep = [i for i in range(self.n_lines) if not removed & bit(i)]
        renumber = {old: new for new, old in enumerate(keep)}
        points: set[int] = set()
        for point in self.points:
            rest = [renumber[i] for i in indices(point) if i in renumber]
            if len(rest) >= 2:
                points.add(mask_of(rest))
        triples = None
        if self.triples is not None:
            triples = tuple(self.triples[i] for i in keep)
        return LineArrangement(n_lines=len(keep), points=_ordered(points), triples=triples)

    def to_descriptor(self) -> dict[str, object]:
        if self.triples is not None:
            return {"type": "lines", "triples": [[str(x) for x in t] for t in self.triples]}
        return {
            "type": "lines",
            "n_lines": self.n_lines,
            "points": [to_one_based(p) for p in self.points],
        }

    def __str__(self) -> str:
        return f"LineArrangement(lines={self.n_lines}, points={len(self.points)})"


def _ordered(points: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(points, key=lambda p: (-popcount(p), lex_key(p))))


@dataclass(frozen=True)
class TVector:
    """t_k = number of points of multiplicity exactly k."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, arrangement: LineArrangement) -> TVector:
        tally: dict[int, int] = {}
        for point in arrangement.points:
            k = popcount(point)
            tally[k] = tally.get(k, 0) + 1
        return cls(counts=tuple(sorted(tally.items())))

    def get(self, k: int) -> int:
        return dict(self.counts).get(k, 0)

    def to_dict(self) -> dict[str, int]:
        return {f"t{k}": c for k, c in self.counts}

    def __str__(self) -> str:
        return ", ".join(f"t_{k}={c}" for k, c in self.counts)


@dataclass(frozen=True)
class TVectorReport:
    """t-vector plus t_2 + t_3 - (#lines + sum_{j>=5} (j - 4) t_j).

    ``diagnostic`` is None below four lines. The constant term is read as the
    number of lines.
    """

    n_lines: int
    tvector: TVector
    diagnostic: int | None

    @property
    def sign(self) -> str:
        if self.diagnostic is None:
            return "skipped"
        if self.diagnostic > 0:
            return "positive"
        return "zero" if self.diagnostic == 0 else "negative"

    def to_dict(self) -> dict[str, object]:
        return {
            "lines": self.n_lines,
            "tvector": self.tvector.to_dict(),
            "diagnostic": self.diagnostic,
            "diagnostic_sign": self.sign,
            "constant_term": "number of lines",
        }

    def get_tsv_headers(self) -> list[str]:
        return ["lines", "tvector", "diagnostic", "diagnostic_sign"]

    def to_tsv_row(self) -> list[str]:
        return [
            str(self.n_lines),
            ",".join(f"t{k}={c}" for k, c in self.tvector.counts),
            "" if self.diagnostic is None else str(self.diagnostic),
            self.sign,
        ]


def line_arrangement_tvector(arrangement: LineArrangement) -> TVectorReport:
    tvector = TVector.of(arrangement)
    diagnostic: int | None = None
    if arrangement.n_lines >= 4:
        tail = sum((k - 4) * c for k, c in tvector.counts if k >= 5)
        diagnostic = tvector.get(2) + tvector.get(3) - (arrangement.n_lines + tail)
    return TVectorReport(n_lines=arrangement.n_lines, tvector=tvector, diagnostic=diagnostic)


@dataclass(frozen=True)
class HHFamily:
    """A member of the modular line families with its bookkeeping.

    Attributes:
        kind: near_pencil, two_modular, three_modular or four_modular.
        params: Family parameters by name.
        arrangement: The incidence structure.
        off_modular_doubles: Double points off the distinguished modular points.
    """

    kind: str
    params: dict[str, int]
    arrangement: LineArrangement
    off_modular_doubles: int
    distinguished: tuple[int, ...] = ()

    def matroid(self) -> Matroid:
        return self.arrangement.matroid()

    def to_dict(self) -> dict[str, object]:
        report = line_arrangement_tvector(self.arrangement)
        return {
            "kind": self.kind,
            "params": self.params,
            "lines": self.arrangement.n_lines,
            "points": len(self.arrangement.points),
            "tvector": report.tvector.to_dict(),
            "off_modular_doubles": self.off_modular_doubles,
            "modular_points": [
                {"lines": to_one_based(p), "multiplicity": popcount(p)} for p in self.distinguished
            ],
            "diagnostic": report.diagnostic,
        }

    def get_tsv_headers(self) -> list[str]:
        return [
            "kind",
            "lines",
            "points",
            "tvector",
            "off_modular_doubles",
            "modular_multiplicities",
        ]

    def to_tsv_row(self) -> list[str]:
        return [
            self.kind,
            str(self.arrangement.n_lines),
            str(len(self.arrangement.points)),
            ",".join(f"t{k}={c}" for k, c in TVector.of(self.arrangement).counts),
            str(self.off_modular_doubles),
            ",".join(str(popcount(p)) for p in self.distinguished),
        ]


def near_pencil(k: int) -> HHFamily:
    """k - 1 lines through one point and one further line."""
    if k < 3:
        raise _fail(BadParameters, f"A near pencil needs at least 3 lines, got {k}")
    center = full_mask(k - 1)
    points = [center] + [bit(i) | bit(k - 1) for i in range(k - 1)]
    arrangement = LineArrangement.from_incidences(k, points)
    return HHFamily("near_pencil", {"k": k}, arrangement, k - 1, (center,))


def two_modular(a: int, b: int) -> HHFamily:
    """Line L0 through modular points P and Q, a - 1 more lines through P, b - 1 through Q.

    Lines: L0, then P_1..P_(a-1), then Q_1..Q_(b-1).
    """
    if not 2 <= a < b:
        raise _fail(BadParameters, f"two_modular needs 2 <= a < b, got a={a}, b={b}")
    n = a + b - 1
    p_lines = [1 + i for i in range(a - 1)]
    q_lines = [a + j for j in range(b - 1)]
    p_point = bit(0) | mask_of(p_lines)
    q_point = bit(0) | mask_of(q_lines)
    doubles = [bit(i) | bit(j) for i in p_lines for j in q_lines]
    arrangement = LineArrangement.from_incidences(n, [p_point, q_point, *doubles])
    return HHFamily(
        "two_modular", {"a": a, "b": b}, arrangement, len(doubles), (p_point, q_point)
    )


def three_modular(m: int) -> HHFamily:
    """Lines X, Y, Z and three pencils of q = m - 2 lines A_i, B_j, C_k.

    A_i, B_j, C_k meet in a triple point exactly when k = j - i mod q; the three
    coordinate vertices carry X, Y with every A_i (and so on), multiplicity m.
    """
    if m <= 3:
        raise _fail(BadParameters, f"three_modular needs m > 3, got {m}")
    q = m - 2
    x, y, z = 0, 1, 2

    def a_line(i: int) -> int:
        return 3 + i

    def b_line(j: int) -> int:
        return 3 + q + j

    def c_line(k: int) -> int:
        return 3 + 2 * q + k

    modular = (
        bit(x) | bit(y) | mask_of(a_line(i) for i in range(q)),
        bit(x) | bit(z) | mask_of(b_line(j) for j in range(q)),
        bit(y) | bit(z) | mask_of(c_line(k) for k in range(q)),
    )
    triples = [
        bit(a_line(i)) | bit(b_line(j)) | bit(c_line((j - i) % q))
        for i in range(q)
        for j in range(q)
    ]
    doubles = (
        [bit(x) | bit(c_line(k)) for k in range(q)]
        + [bit(y) | bit(b_line(j)) for j in range(q)]
        + [bit(z) | bit(a_line(i)) for i in range(q)]
    )
    arrangement = LineArrangement.from_incidences(3 * (m - 1), [*modular, *triples, *doubles])
    return HHFamily("three_modular", {"m": m}, arrangement, len(doubles), modular)


FOUR_MODULAR_TRIPLES = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (1, 0, -1), (0, 1, -1))


def four_modular() -> HHFamily:
    """x, y, z, x - y, x - z, y - z."""
    arrangement = LineArrangement.from_triples(FOUR_MODULAR_TRIPLES)
    doubles = sum(1 for p in arrangement.points if popcount(p) == 2)
    triples = tuple(p for p in arrangement.points if popcount(p) == 3)
    return HHFamily("four_modular", {}, arrangement, doubles, triples)


HH_KINDS = ("near_pencil", "two_modular", "three_modular", "four_modular")


def hh_family(kind: str, **params: int) -> HHFamily:
    """Dispatch on the family name.

    Raises:
        BadParameters: Unknown kind or missing/invalid parameters.
    """
    try:
        if kind == "near_pencil":
            family = near_pencil(params["k"])
        elif kind == "two_modular":
            family = two_modular(params["a"], params["b"])
        elif kind == "three_modular":
            family = three_modular(params["m"])
        elif kind == "four_modular":
            family = four_modular()
        else:
            raise _fail(
                BadParameters, f"Unknown family '{kind}'. Supported: {', '.join(HH_KINDS)}"
            )
    except KeyError as e:
        raise _fail(BadParameters, f"Family '{kind}' needs parameter {e}") from e
    logger.debug(f"{kind}{params}: {family.arrangement}")
    return family


@dataclass(frozen=True)
class DegreeRange:
    """Closed interval [low, high] of candidate degrees and the companion bound floor(m/3)."""

    low: int
    high: int
    companion: int

    @property
    def is_empty(self) -> bool:
        return self.low > self.high

    def to_dict(self) -> dict[str, object]:
        return {
            "low": self.low,
            "high": self.high,
            "empty": self.is_empty,
            "companion_bound": self.companion,
        }

    def get_tsv_headers(self) -> list[str]:
        return ["low", "high", "empty", "companion_bound"]

    def to_tsv_row(self) -> list[str]:
        return [str(self.low), str(self.high), str(self.is_empty).lower(), str(self.companion)]


def unexpected_degree_range(n_lines: int, m: int) -> DegreeRange:
    """[m, n_lines - m - 1] together with floor(m / 3)."""
    if not n_lines >= m >= 3:
        raise _fail(BadParameters, f"Degree range needs n_lines >= m >= 3, got {n_lines}, {m}")
    return DegreeRange(low=m, high=n_lines - m - 1, companion=m // 3)


def companion_arrangement(m: int) -> LineArrangement:
    """three_modular(m) without the lines X, Y, Z."""
    return three_modular(m).arrangement.delete(bit(0) | bit(1) | bit(2))
