"""Sparse multivariate Laurent polynomials over the rationals.

A polynomial is a mapping from integer exponent tuples (negative entries
allowed) to nonzero rational coefficients.  Coefficients with denominator
one are stored as plain ``int`` which keeps the hot multiplication loop
cheap; ``Fraction`` and ``int`` compare and hash identically.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

Exponent = tuple[int, ...]


def grlex_key(e: Exponent) -> tuple[int, Exponent]:
    """Sort key of the graded-lexicographic order (degree, then entries)."""
    return (sum(e), e)


def _norm_coef(c) -> int | Fraction:
    if isinstance(c, int):
        return c
    c = Fraction(c)
    return c.numerator if c.denominator == 1 else c


class LaurentPolynomial:
    """Immutable sparse Laurent polynomial in ``nvars`` generators."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, Rational] | None = None, nvars: int = 0):
        self.nvars = nvars
        clean: dict[Exponent, int | Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have length {nvars}")
            if c:
                clean[tuple(e)] = _norm_coef(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> LaurentPolynomial:
        # terms already clean: tuple keys, nonzero normalized coefficients
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, nvars: int) -> LaurentPolynomial:
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def monomial(cls, exponent: Iterable[int], coef=1) -> LaurentPolynomial:
        e = tuple(exponent)
        return cls({e: coef}, len(e))

    @classmethod
    def generator(cls, index: int, nvars: int) -> LaurentPolynomial:
        e = [0] * nvars
        e[index] = 1
        return cls.monomial(e)

    @property
    def terms(self) -> dict[Exponent, int | Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list[tuple[Exponent, int | Fraction]]:
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and not any(next(iter(self._terms))))

    def leading_term(self) -> tuple[Exponent, int | Fraction]:
        e = max(self._terms, key=grlex_key)
        return e, self._terms[e]

    def min_exponent(self) -> Exponent:
        """Componentwise minimum, i.e. the exponent of the monomial content."""
        if not self._terms:
            return (0,) * self.nvars
        return tuple(min(col) for col in zip(*self._terms))

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPolynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other: LaurentPolynomial) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"generator count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = _norm_coef(s)
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(out, self.nvars)

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: LaurentPolynomial) -> LaurentPolynomial:
        return self + (-other)

    def __mul__(self, other) -> LaurentPolynomial:
        if not isinstance(other, LaurentPolynomial):
            return self.scale(other)
        self._check(other)
        if not self._terms or not other._terms:
            return LaurentPolynomial({}, self.nvars)
        # Kronecker packing: shift both into nonnegative exponents and encode
        # each exponent vector as one integer in a base with no carries
        lo1, lo2 = self.min_exponent(), other.min_exponent()
        span = [
            max(e[d] for e in self._terms) - lo1[d] + max(e[d] for e in other._terms) - lo2[d] + 1
            for d in range(self.nvars)
        ]
        pack1 = _packer(lo1, span)
        pack2 = _packer(lo2, span)
        t2 = [(pack2(e), c) for e, c in other._terms.items()]
        out: dict[int, int | Fraction] = {}
        get = out.get
        for e1, c1 in self._terms.items():
            k1 = pack1(e1)
            for k2, c2 in t2:
                k = k1 + k2
                out[k] = get(k, 0) + c1 * c2
        lo = tuple(a + b for a, b in zip(lo1, lo2))
        return LaurentPolynomial._raw(
            {_unpack(k, lo, span): _norm_coef(c) for k, c in out.items() if c}, self.nvars
        )

    __rmul__ = __mul__

    def scale(self, c) -> LaurentPolynomial:
        if not c:
            return LaurentPolynomial({}, self.nvars)
        return LaurentPolynomial._raw(
            {e: _norm_coef(v * c) for e, v in self._terms.items()}, self.nvars
        )

    def shift(self, exponent: Exponent) -> LaurentPolynomial:
        """Multiply by the monomial with the given exponent."""
        return LaurentPolynomial._raw(
            {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms.items()},
            self.nvars,
        )

    def __pow__(self, k: int) -> LaurentPolynomial:
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            return LaurentPolynomial.monomial(tuple(-x for x in e), 1 / Fraction(c)) ** (-k)
        out = LaurentPolynomial.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point; raises ZeroDivisionError on a
        negative power of a zero coordinate."""
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        pt = [Fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            v = Fraction(c)
            for x, k in zip(pt, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.sorted_terms()!r}, nvars={self.nvars})"


def _packer(lo: Exponent, span: list[int]):
    weights = []
    w = 1
    for b in span:
        weights.append(w)
        w *= b

    def pack(e: Exponent) -> int:
        return sum((x - m) * wt for x, m, wt in zip(e, lo, weights))

    return pack


def _unpack(k: int, lo: Exponent, span: list[int]) -> Exponent:
    out = []
    for m, b in zip(lo, span):
        k, r = divmod(k, b)
        out.append(r + m)
    return tuple(out)


def laurent_exact_divide(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial | None:
    """Return ``r`` with ``p == q * r`` in the Laurent ring, or ``None``.

    Monomials are units, so both operands are first shifted into the
    ordinary polynomial ring with the monomial content of ``q`` removed;
    divisibility there is decided by grlex long division.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check(q)
    if p.is_zero():
        return p
    qmin = q.min_exponent()
    pmin = p.min_exponent()
    qs = q.shift(tuple(-x for x in qmin))
    ps = p.shift(tuple(-x for x in pmin))
    if qs.is_monomial():
        (_, c), = qs.items()
        r = ps.scale(1 / Fraction(c))
    else:
        r = _poly_divide(ps, qs)
        if r is None:
            return None
    return r.shift(tuple(a - b for a, b in zip(pmin, qmin)))


def _poly_divide(p: LaurentPolynomial, q: LaurentPolynomial) -> LaurentPolynomial | None:
    # both have nonnegative exponents; exact division or None.  Every key met
    # during the division has total degree <= deg(p), so exponent vectors are
    # encoded as deg * B^n + lex-packed exponents with B = deg(p) + 1: integer
    # order is grlex order and addition of codes is addition of exponents.
    n = p.nvars
    deg_p = max(sum(e) for e in p._terms)
    base = deg_p + 1
    weights = [base ** (n - 1 - i) for i in range(n)]
    top = base**n

    def code(e: Exponent) -> int:
        return sum(e) * top + sum(x * w for x, w in zip(e, weights))

    def decode(k: int) -> Exponent:
        k %= top
        out = []
        for w in weights:
            d, k = divmod(k, w)
            out.append(d)
        return tuple(out)

    lq, lc = q.leading_term()
    if sum(lq) > deg_p:
        return None
    lc = Fraction(lc)
    lq_code = code(lq)
    qterms = [(code(e), c) for e, c in q.items() if e != lq]
    rem = {code(e): c for e, c in p.items()}
    heap = [-k for k in rem]
    heapq.heapify(heap)
    quot: dict[Exponent, int | Fraction] = {}
    while rem:
        le = -heapq.heappop(heap)
        if le not in rem:
            continue
        diff = tuple(a - b for a, b in zip(decode(le), lq))
        if le // top < lq_code // top or min(diff) < 0:
            return None
        dcode = le - lq_code
        coef = _norm_coef(rem.pop(le) / lc)
        quot[diff] = coef
        for e, c in qterms:
            key = e + dcode
            old = rem.get(key)
            s = (old or 0) - coef * c
            if s:
                rem[key] = s
                if old is None:
                    heapq.heappush(heap, -key)
            elif old is not None:
                del rem[key]
    return LaurentPolynomial(quot, n)
