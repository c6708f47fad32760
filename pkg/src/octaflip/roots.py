"""Real roots of rational polynomials of degree at most two.

A root is either an exact ``Fraction`` (linear polynomial, or quadratic
with square discriminant) or an irrational quadratic root carried with an
isolating interval ``(lo, hi)`` that excludes the other root.  Two roots are
compared exactly: irrational quadratic roots are equal only when their
primitive quadratics coincide, and otherwise intervals are bisected until
they separate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rationals ``lo < sqrt(q) < hi`` with ``hi - lo <= 2**-bits``."""
    scale = 1 << (2 * bits)
    x = q * scale
    r = math.isqrt(x.numerator // x.denominator)
    return Fraction(r, 1 << bits), Fraction(r + 1, 1 << bits)


def _primitive(coeffs: tuple[Fraction, ...]) -> tuple[int, ...]:
    # scale to coprime integers with positive leading coefficient
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x)
    return tuple(-x for x in ints) if lead < 0 else tuple(ints)


@dataclass(frozen=True)
class QuadPoly:
    """``c2*t^2 + c1*t + c0`` with rational coefficients."""

    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __call__(self, t):
        return (self.c2 * t + self.c1) * t + self.c0

    @property
    def degree(self) -> int:
        if self.c2:
            return 2
        if self.c1:
            return 1
        return 0 if self.c0 else -1

    def is_zero(self) -> bool:
        return not (self.c2 or self.c1 or self.c0)

    def discriminant(self) -> Fraction:
        return self.c1 * self.c1 - 4 * self.c2 * self.c0


@total_ordering
class AlgebraicRoot:
    """A real root of a quadratic (or linear) rational polynomial."""

    __slots__ = ("poly", "selector", "lo", "hi", "exact")

    def __init__(self, poly: QuadPoly, selector: str, lo: Fraction, hi: Fraction, exact: Fraction | None):
        self.poly = poly
        self.selector = selector
        self.lo = lo
        self.hi = hi
        self.exact = exact

    @classmethod
    def rational(cls, poly: QuadPoly, value: Fraction, selector: str = "only") -> AlgebraicRoot:
        return cls(poly, selector, value, value, value)

    @property
    def is_rational(self) -> bool:
        return self.exact is not None

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    def refine(self) -> None:
        """Halve the isolating interval (no-op for rational roots)."""
        if self.exact is not None:
            return
        mid = (self.lo + self.hi) / 2
        f_lo, f_mid = self.poly(self.lo), self.poly(mid)
        # mid is rational while the root is not, so f(mid) != 0
        if (f_lo > 0) != (f_mid > 0):
            self.hi = mid
        else:
            self.lo = mid

    def refine_to(self, width: Fraction) -> None:
        while self.hi - self.lo > width:
            self.refine()

    def _key(self):
        return _primitive((self.poly.c2, self.poly.c1, self.poly.c0)), self.selector

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraicRoot):
            return NotImplemented
        return compare_roots(self, other) == 0

    def __lt__(self, other: AlgebraicRoot) -> bool:
        return compare_roots(self, other) < 0

    def __hash__(self):
        return hash(self.exact) if self.exact is not None else hash(self._key())

    def __float__(self) -> float:
        return float(self.exact) if self.exact is not None else float((self.lo + self.hi) / 2)

    def __repr__(self) -> str:
        if self.exact is not None:
            return f"AlgebraicRoot({self.exact})"
        return f"AlgebraicRoot({self.poly}, {self.selector}, [{self.lo}, {self.hi}])"


def compare_roots(a: AlgebraicRoot, b: AlgebraicRoot) -> int:
    if a.exact is not None and b.exact is not None:
        return (a.exact > b.exact) - (a.exact < b.exact)
    if a.exact is None and b.exact is None and a._key() == b._key():
        return 0
    # now a != b; refine until the intervals separate
    while True:
        if a.hi < b.lo or (a.hi == b.lo and (a.exact is None or b.exact is None)):
            return -1
        if b.hi < a.lo or (b.hi == a.lo and (a.exact is None or b.exact is None)):
            return 1
        a.refine()
        b.refine()


def compare_with_rational(a: AlgebraicRoot, r: Fraction) -> int:
    """Sign of ``a - r``."""
    return compare_roots(a, AlgebraicRoot.rational(QuadPoly(Fraction(0), Fraction(1), -r), r))


def real_roots(p: QuadPoly) -> list[tuple[AlgebraicRoot, int]]:
    """Distinct real roots in increasing order with multiplicities.

    Raises ``ValueError`` for the zero polynomial.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has every number as a root")
    if p.degree == 0:
        return []
    if p.degree == 1:
        r = -p.c0 / p.c1
        return [(AlgebraicRoot.rational(p, r), 1)]
    disc = p.discriminant()
    if disc < 0:
        return []
    a2 = 2 * p.c2
    if disc == 0:
        return [(AlgebraicRoot.rational(p, -p.c1 / a2), 2)]
    s = rational_sqrt(disc)
    if s is not None:
        r1, r2 = sorted(((-p.c1 - s) / a2, (-p.c1 + s) / a2))
        return [(AlgebraicRoot.rational(p, r1, "lower"), 1), (AlgebraicRoot.rational(p, r2, "upper"), 1)]
    # isolate: choose sqrt bounds tight enough that the two intervals are disjoint
    bits = 8
    while True:
        slo, shi = sqrt_bounds(disc, bits)
        ends = sorted(((-p.c1 - slo) / a2, (-p.c1 - shi) / a2))
        lower_int = ends if p.c2 > 0 else sorted(((-p.c1 + slo) / a2, (-p.c1 + shi) / a2))
        upper_int = sorted(((-p.c1 + slo) / a2, (-p.c1 + shi) / a2)) if p.c2 > 0 else ends
        if lower_int[1] < upper_int[0]:
            break
        bits *= 2
    return [
        (AlgebraicRoot(p, "lower", lower_int[0], lower_int[1], None), 1),
        (AlgebraicRoot(p, "upper", upper_int[0], upper_int[1], None), 1),
    ]


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational with smallest denominator in the open interval ``(lo, hi)``."""
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("empty interval")
    if lo < 0 < hi:
        return Fraction(0)
    if hi <= 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    if lo == fl:
        return fl + Fraction(1, math.floor(1 / (hi - fl)) + 1)
    # no integer inside: continued-fraction step on the fractional parts
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))
