"""Rational functions over Q with Laurent-polynomial numerator and denominator.

No multivariate gcd is computed.  A fraction is kept in a light normal form:
the monomial content of the denominator is moved into the numerator, the
denominator is made monic in grlex order, and a single exact division of
numerator by denominator is attempted after division.  Equality is decided
by cross-multiplication, which needs no reduction at all.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import BackendMismatch
from .laurent import LaurentPolynomial, laurent_exact_divide


class FieldElement:
    """Element of the classical backend: ``num / den``."""

    backend = "classical"
    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPolynomial, den: LaurentPolynomial | None = None):
        if den is None:
            den = LaurentPolynomial.constant(1, num.nvars)
        if num.nvars != den.nvars:
            raise ValueError("numerator and denominator have different generator counts")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        shift = den.min_exponent()
        if any(shift):
            neg = tuple(-x for x in shift)
            den = den.shift(neg)
            num = num.shift(neg)
        _, lc = den.leading_term()
        if lc != 1:
            inv = 1 / Fraction(lc)
            den = den.scale(inv)
            num = num.scale(inv)
        if num.is_zero():
            den = LaurentPolynomial.constant(1, den.nvars)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def generator(cls, index: int, nvars: int) -> FieldElement:
        return cls(LaurentPolynomial.generator(index, nvars))

    @classmethod
    def constant(cls, c, nvars: int) -> FieldElement:
        return cls(LaurentPolynomial.constant(c, nvars))

    def _check(self, other) -> None:
        if not isinstance(other, FieldElement):
            raise BackendMismatch(f"cannot combine classical element with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise BackendMismatch(f"generator count mismatch: {self.nvars} vs {other.nvars}")

    def is_laurent(self) -> bool:
        """True when the stored denominator is a monomial (after normalization, 1)."""
        return self.den.is_monomial()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def otimes(self, other: FieldElement) -> FieldElement:
        self._check(other)
        return FieldElement(self.num * other.num, self.den * other.den)

    def oplus(self, other: FieldElement) -> FieldElement:
        self._check(other)
        if self.den == other.den:
            return FieldElement(self.num + other.num, self.den)
        return FieldElement(self.num * other.den + other.num * self.den, self.den * other.den)

    def oslash(self, other: FieldElement) -> FieldElement:
        self._check(other)
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return FieldElement(self.num * other.den, self.den * other.num).simplified()

    def simplified(self) -> FieldElement:
        """One attempt to divide the numerator by the denominator exactly."""
        if self.den.is_constant():
            return self
        q = laurent_exact_divide(self.num, self.den)
        if q is None:
            return self
        return FieldElement(q)

    def equals(self, other: FieldElement) -> bool:
        self._check(other)
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at the point")
        return self.num.evaluate(point) / d

    __mul__ = otimes
    __add__ = oplus
    __truediv__ = oslash

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        from .text import serialize

        return f"FieldElement({serialize(self)!r})"
