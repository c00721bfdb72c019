"""Exact linear algebra over the rationals.

Dense routines take rows of ``Fraction`` (or int) entries and never touch
floating point. :class:`SparseRowReducer` does incremental fraction-free
elimination on integer rows keyed by column, which is what the Chow ring
presentation needs.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from fractions import Fraction
from math import gcd, lcm

Vector = tuple[Fraction, ...]


def as_fractions(rows: Iterable[Iterable[int | Fraction]]) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def integer_row(row: Sequence[int | Fraction]) -> tuple[int, ...]:
    """Scale a rational row to a primitive integer row with positive leading entry."""
    fracs = [Fraction(x) for x in row]
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def rank(rows: Sequence[Sequence[int | Fraction]]) -> int:
    """Matrix rank by fraction-free (Bareiss) elimination."""
    matrix = [list(integer_row(r)) for r in rows if any(r)]
    if not matrix:
        return 0
    n_rows, n_cols = len(matrix), len(matrix[0])
    prev = 1
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        p = matrix[r][c]
        for i in range(r + 1, n_rows):
            factor = matrix[i][c]
            for j in range(c, n_cols):
                matrix[i][j] = (matrix[i][j] * p - matrix[r][j] * factor) // prev
        prev = p
        r += 1
        if r == n_rows:
            break
    return r


def rref(rows: Sequence[Sequence[int | Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    matrix = as_fractions(rows)
    if not matrix:
        return [], []
    n_rows, n_cols = len(matrix), len(matrix[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if matrix[i][c] != 0), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        lead = matrix[r][c]
        matrix[r] = [x / lead for x in matrix[r]]
        for i in range(n_rows):
            if i != r and matrix[i][c] != 0:
                factor = matrix[i][c]
                matrix[i] = [a - factor * b for a, b in zip(matrix[i], matrix[r], strict=True)]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return matrix[:r], pivots


def nullspace(rows: Sequence[Sequence[int | Fraction]], n_cols: int) -> list[Vector]:
    """Basis of {x : A x = 0}, one vector per free column."""
    reduced, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis: list[Vector] = []
    for f in free:
        vec = [Fraction(0)] * n_cols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots, strict=True):
            vec[p] = -row[f]
        basis.append(tuple(vec))
    return basis


def dot(u: Sequence[int | Fraction], v: Sequence[int | Fraction]) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v, strict=True)), Fraction(0))


def in_span(vector: Sequence[int | Fraction], rows: Sequence[Sequence[int | Fraction]]) -> bool:
    if not any(vector):
        return True
    return rank([*rows, vector]) == rank(rows)


def rowspace_equal(
    first: Sequence[Sequence[int | Fraction]], second: Sequence[Sequence[int | Fraction]]
) -> bool:
    """True when both row sets span the same subspace."""
    r1, r2 = rank(first), rank(second)
    return r1 == r2 == rank([*first, *second])


def cross(u: Sequence[int | Fraction], v: Sequence[int | Fraction]) -> tuple[Fraction, ...]:
    a = [Fraction(x) for x in u]
    b = [Fraction(x) for x in v]
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


class SparseRowReducer:
    """Incremental echelon basis of integer rows stored as {column: coefficient}.

    Each stored row has a distinct leading (smallest) column. Rows are kept
    primitive, so coefficients stay small on the sparse systems used here.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @staticmethod
    def _normalize(row: dict[int, int]) -> dict[int, int]:
        g = 0
        for v in row.values():
            g = gcd(g, v)
        if g > 1:
            row = {k: v // g for k, v in row.items()}
        return row

    def reduce(self, row: dict[int, int]) -> dict[int, int]:
        current = {k: v for k, v in row.items() if v}
        while current:
            lead = min(current)
            pivot = self.pivots.get(lead)
            if pivot is None:
                return current
            a, b = pivot[lead], current[lead]
            merged: dict[int, int] = {k: v * a for k, v in current.items()}
            for k, v in pivot.items():
                merged[k] = merged.get(k, 0) - v * b
            current = self._normalize({k: v for k, v in merged.items() if v})
        return current

    def add(self, row: dict[int, int]) -> bool:
        """Insert a row; return True when it was independent of the stored rows."""
        reduced = self.reduce(row)
        if not reduced:
            return False
        self.pivots[min(reduced)] = reduced
        return True

    def copy(self) -> SparseRowReducer:
        clone = SparseRowReducer()
        clone.pivots = {k: dict(v) for k, v in self.pivots.items()}
        return clone
