"""Integer-coefficient univariate polynomials."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass


def _strip(coefficients: Iterable[int]) -> tuple[int, ...]:
    coeffs = list(coefficients)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, index = degree.

    Trailing zeros are stripped on construction, so equality is structural and
    the zero polynomial has an empty coefficient tuple and degree -1.
    """

    coefficients: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _strip(self.coefficients))

    @classmethod
    def of(cls, coefficients: Sequence[int]) -> IntPolynomial:
        """Polynomial with ``coefficients`` listed from the constant term up."""
        return cls(tuple(coefficients))

    @classmethod
    def zero(cls) -> IntPolynomial:
        return cls(())

    @classmethod
    def one(cls) -> IntPolynomial:
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> IntPolynomial:
        """Return ``coefficient`` * t**``degree``."""
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        """Return the product of (t - r) over ``roots``."""
        out = cls.one()
        for r in roots:
            out = out * cls((-r, 1))
        return out

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def coefficient(self, d: int) -> int:
        """Coefficient of t**d; 0 outside the stored range."""
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0

    def is_zero(self) -> bool:
        return not self.coefficients

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self.coefficient(i) + other.coefficient(i) for i in range(size)))

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other: IntPolynomial | int) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial(tuple(c * other for c in self.coefficients))
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return IntPolynomial(tuple(out))

    __rmul__ = __mul__

    def evaluate(self, t: int) -> int:
        """
        Evaluate the polynomial at an integer point by Horner's rule.

        Args:
            t: Evaluation point

        Returns:
            int: Exact value, with no overflow
        """
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def divmod_linear(self, root: int) -> tuple[IntPolynomial, int]:
        """Divide by (t - root); return quotient and remainder (synthetic division)."""
        if self.is_zero():
            return IntPolynomial.zero(), 0
        coeffs = list(self.coefficients)
        quotient = [0] * (len(coeffs) - 1)
        carry = 0
        for i in range(len(coeffs) - 1, 0, -1):
            carry = coeffs[i] + carry * root
            quotient[i - 1] = carry
        remainder = coeffs[0] + carry * root
        return IntPolynomial(tuple(quotient)), remainder

    def multiplicity_of_root(self, root: int) -> int:
        """Return how many times (t - root) divides the polynomial (0 for the zero polynomial)."""
        if self.is_zero():
            return 0
        count = 0
        poly = self
        while poly.degree >= 1:
            q, r = poly.divmod_linear(root)
            if r != 0:
                break
            count += 1
            poly = q
        return count

    def is_palindromic(self) -> bool:
        """True when the coefficient list reads the same reversed (zero counts as palindromic)."""
        return self.coefficients == tuple(reversed(self.coefficients))

    def to_list(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms: list[str] = []
        for d in range(self.degree, -1, -1):
            c = self.coefficients[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                base = "t" if d == 1 else f"t^{d}"
                body = base if mag == 1 else f"{mag}{base}"
            if not terms:
                terms.append(body if sign == "+" else f"-{body}")
            else:
                terms.append(f"{sign} {body}")
        return " ".join(terms)
