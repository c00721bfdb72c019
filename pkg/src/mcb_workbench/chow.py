"""Chow rings of matroids: Hilbert series, monomial basis and a presentation oracle.

The Hilbert series is computed from flags of flats (bottom excluded, top
included) weighted by t + t^2 + ... + t^(gap - 1) per rank gap. The oracle
works from the graded presentation instead: one variable per nonempty proper
flat, incomparable products vanish, and sum_{F containing i} x_F is the same
linear form for every element i. Monomials that are not supported on a chain
are already zero, so every computation happens on chain monomials only.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cache

from loguru import logger

from .bitsets import bit, to_one_based
from .linalg import SparseRowReducer
from .matroid import Matroid
from .polynomial import IntPolynomial


class ChowError(ValueError):
    """Base exception for Chow ring computations."""

    pass


class LoopyMatroid(ChowError):
    pass


class TooLarge(ChowError):
    """The presentation oracle guard was exceeded."""

    pass


class NotAHyperplane(ChowError):
    pass


def _fail(error: type[ChowError], message: str) -> ChowError:
    logger.error(message)
    return error(message)


def _require_loopless(matroid: Matroid) -> None:
    if not matroid.is_loopless() or matroid.rank < 1:
        raise _fail(
            LoopyMatroid,
            "Chow ring needs a loopless matroid of rank >= 1 "
            f"(loops: {to_one_based(matroid.loops)})",
        )


@cache
def gap_factor(gap: int) -> IntPolynomial:
    """t + t^2 + ... + t^(gap - 1); zero for gaps below 2."""
    return IntPolynomial((0,) + (1,) * (gap - 1)) if gap >= 2 else IntPolynomial.zero()


def hilbert_fy(matroid: Matroid) -> IntPolynomial:
    """Hilbert series from flag counts.

    P(F) sums the flag weights of chains ending at F, so
    P(F) = g(rk F) + sum_{G < F} P(G) g(rk F - rk G) and H = 1 + sum_F P(F).

    Raises:
        LoopyMatroid: The matroid has loops or rank 0.
    """
    _require_loopless(matroid)
    weights: list[IntPolynomial] = []
    total = IntPolynomial.one()
    nonbottom = list(zip(matroid.flats, matroid.ranks, strict=True))[1:]
    for i, (flat, r) in enumerate(nonbottom):
        acc = gap_factor(r)
        for j in range(i):
            below, rb = nonbottom[j]
            if rb < r and below & flat == below:
                acc = acc + weights[j] * gap_factor(r - rb)
        weights.append(acc)
        total = total + acc
    logger.debug(f"FY Hilbert series of {matroid}: {total}")
    return total


@dataclass(frozen=True)
class FyMonomial:
    """x_{F_1}^{a_1} ... x_{F_l}^{a_l} along a chain of flats."""

    factors: tuple[tuple[int, int], ...]

    @property
    def degree(self) -> int:
        return sum(a for _, a in self.factors)

    def to_dict(self) -> dict[str, object]:
        return {
            "factors": [{"flat": to_one_based(f), "exponent": a} for f, a in self.factors],
        }

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " ".join(
            f"x{to_one_based(f)}" + (f"^{a}" if a > 1 else "") for f, a in self.factors
        )


def fy_basis_enumerate(matroid: Matroid, degree: int) -> list[FyMonomial]:
    """Basis monomials of degree ``degree``.

    Chains bottom < F_1 < ... < F_l with 1 <= a_i <= rk F_i - rk F_{i-1} - 1.
    """
    _require_loopless(matroid)
    if degree < 0:
        return []
    flats = list(zip(matroid.flats, matroid.ranks, strict=True))
    out: list[FyMonomial] = []

    def extend(last: int, last_rank: int, remaining: int, acc: list[tuple[int, int]]) -> None:
        if remaining == 0:
            out.append(FyMonomial(tuple(acc)))
            return
        for flat, r in flats:
            gap = r - last_rank
            if gap < 2 or last & flat != last or flat == last:
                continue
            for a in range(1, min(gap - 1, remaining) + 1):
                acc.append((flat, a))
                extend(flat, r, remaining - a, acc)
                acc.pop()

    extend(matroid.bottom, 0, degree, [])
    return out


def fy_basis_counts(matroid: Matroid) -> list[int]:
    return [len(fy_basis_enumerate(matroid, d)) for d in range(matroid.rank)]


@dataclass
class ChowPresentation:
    """Graded presentation restricted to chain monomials.

    Attributes:
        matroid: Loopless matroid within the size guard.
        variables: Nonempty proper flats, canonical order.
    """

    MAX_ELEMENTS = 6

    matroid: Matroid
    variables: list[int] = field(init=False)
    _chains: dict[int, list[tuple[int, ...]]] = field(init=False, default_factory=dict)
    _relations: dict[int, SparseRowReducer] = field(init=False, default_factory=dict)

    def __post_init__(self) -> None:
        _require_loopless(self.matroid)
        if self.matroid.n > self.MAX_ELEMENTS:
            raise _fail(
                TooLarge,
                f"Presentation oracle is limited to {self.MAX_ELEMENTS} elements, "
                f"got {self.matroid.n}",
            )
        self.variables = [f for f in self.matroid.flats if f and f != self.matroid.ground]
        self._linear = self._linear_relations()

    def _linear_relations(self) -> list[dict[int, int]]:
        relations: list[dict[int, int]] = []
        for j in range(1, self.matroid.n):
            row: dict[int, int] = {}
            for idx, f in enumerate(self.variables):
                coeff = (1 if f & bit(0) else 0) - (1 if f & bit(j) else 0)
                if coeff:
                    row[idx] = coeff
            if row:
                relations.append(row)
        return relations

    def _comparable(self, i: int, j: int) -> bool:
        a, b = self.variables[i], self.variables[j]
        return a & b == a or a & b == b

    def _iter_chains(self, degree: int) -> Iterator[tuple[int, ...]]:
        ups = [
            [j for j in range(i, len(self.variables)) if j == i or self._comparable(i, j)]
            for i in range(len(self.variables))
        ]

        def grow(prefix: tuple[int, ...], remaining: int) -> Iterator[tuple[int, ...]]:
            if remaining == 0:
                yield prefix
                return
            options = ups[prefix[-1]] if prefix else range(len(self.variables))
            for j in options:
                yield from grow((*prefix, j), remaining - 1)

        yield from grow((), degree)

    def chain_monomials(self, degree: int) -> list[tuple[int, ...]]:
        if degree not in self._chains:
            self._chains[degree] = list(self._iter_chains(degree))
        return self._chains[degree]

    def times(self, chain: tuple[int, ...], var: int) -> tuple[int, ...] | None:
        """Product with x_var, or None when it leaves the chain monomials."""
        if not all(self._comparable(var, c) for c in chain):
            return None
        return tuple(sorted((*chain, var)))

    def relations(self, degree: int) -> SparseRowReducer:
        """Echelon basis of the degree-d ideal modulo non-chain monomials."""
        if degree in self._relations:
            return self._relations[degree]
        reducer = SparseRowReducer()
        if degree >= 1:
            columns = {m: i for i, m in enumerate(self.chain_monomials(degree))}
            for base in self.chain_monomials(degree - 1):
                for rel in self._linear:
                    row: dict[int, int] = {}
                    for var, coeff in rel.items():
                        product = self.times(base, var)
                        if product is not None:
                            col = columns[product]
                            row[col] = row.get(col, 0) + coeff
                    reducer.add(row)
        self._relations[degree] = reducer
        return reducer

    def dimension(self, degree: int) -> int:
        if degree == 0:
            return 1
        total = len(self.chain_monomials(degree))
        return total - self.relations(degree).rank

    def hilbert(self, max_degree: int | None = None) -> IntPolynomial:
        top = self.matroid.rank - 1 if max_degree is None else max_degree
        dims = [self.dimension(d) for d in range(top + 1)]
        logger.debug(f"Presentation Hilbert function of {self.matroid}: {dims}")
        return IntPolynomial(tuple(dims))

    def multiplication_rank(self, var: int, degree: int) -> int:
        """Rank of multiplication by x_var from degree d to degree d + 1."""
        target = self.relations(degree + 1).copy()
        base_rank = target.rank
        columns = {m: i for i, m in enumerate(self.chain_monomials(degree + 1))}
        for chain in self.chain_monomials(degree):
            product = self.times(chain, var)
            if product is not None:
                target.add({columns[product]: 1})
        return target.rank - base_rank


def hilbert_presentation_oracle(matroid: Matroid, max_degree: int | None = None) -> IntPolynomial:
    """Hilbert function from the graded presentation, by exact row reduction.

    Raises:
        LoopyMatroid: The matroid has loops.
        TooLarge: More elements than ChowPresentation.MAX_ELEMENTS.
    """
    return ChowPresentation(matroid).hilbert(max_degree)


@dataclass(frozen=True)
class AnnihilatorQuotient:
    """Per-degree dimensions of A*(M) / Ann(x_F)."""

    flat: int
    dims: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_dict(self) -> dict[str, object]:
        return {"flat": to_one_based(self.flat), "dims": list(self.dims), "total": self.total}

    def get_tsv_headers(self) -> list[str]:
        return ["flat", "dims", "total"]

    def to_tsv_row(self) -> list[str]:
        return [
            ",".join(map(str, to_one_based(self.flat))),
            ",".join(map(str, self.dims)),
            str(self.total),
        ]


def annihilator_quotient_dims(matroid: Matroid, flat: int) -> AnnihilatorQuotient:
    """Dimensions of A*(M)/Ann(x_F) for a nonempty hyperplane F.

    The degree-d piece is the image of multiplication by x_F on A^d.

    Raises:
        NotAHyperplane: F is not a nonempty flat of rank rank(M) - 1.
        TooLarge: The presentation guard trips.
    """
    presentation = ChowPresentation(matroid)
    if (
        not matroid.is_flat(flat)
        or matroid.rank_of_flat(flat) != matroid.rank - 1
        or flat == 0
    ):
        raise _fail(NotAHyperplane, f"{to_one_based(flat)} is not a nonempty hyperplane")
    var = presentation.variables.index(flat)
    dims = tuple(presentation.multiplication_rank(var, d) for d in range(matroid.rank))
    return AnnihilatorQuotient(flat=flat, dims=dims)
