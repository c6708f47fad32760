"""Tropical (max-plus) rational functions with integer exponents.

A term set ``S`` denotes ``x -> max_{e in S} <e, x>``; a tropical element
is a pair ``num - den`` of such functions.  Since the max over a set equals
the max over its convex hull, term sets are kept reduced to the vertices of
their hull, which makes them a canonical form for the function they denote.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

import numpy as np

from ..errors import BackendMismatch
from .hull import directions, extreme_points, hull_contains
from .laurent import grlex_key

Vector = tuple[int, ...]


def trop_canonicalize(terms: Iterable[Vector]) -> tuple[Vector, ...]:
    """Extreme points of the hull, in descending grlex order."""
    pts = extreme_points(terms)
    if not pts:
        raise ValueError("tropical term set must be nonempty")
    return tuple(sorted(pts, key=grlex_key, reverse=True))


def minkowski(a: Iterable[Vector], b: Iterable[Vector]) -> set[Vector]:
    b = list(b)
    return {tuple(x + y for x, y in zip(u, v)) for u in a for v in b}


def trop_eval(terms: Iterable[Vector], point) -> Fraction:
    return max(sum((Fraction(p) * k for p, k in zip(point, e) if k), Fraction(0)) for e in terms)


def trop_exact_divide(num: Iterable[Vector], den: Iterable[Vector]) -> tuple[Vector, ...] | None:
    """Term set ``T`` with ``conv(T + den) == conv(num)``, or ``None``.

    Every vertex of such a ``T`` is a difference of a vertex of ``num`` and a
    vertex of ``den``.  Candidates whose translate of ``den`` visibly leaves
    ``conv(num)`` along one of a fixed family of directions are discarded;
    the survivor hull is then checked exactly.
    """
    num = trop_canonicalize(num)
    den = trop_canonicalize(den)
    if len(den) == 1:
        (d,) = den
        return tuple(tuple(a - b for a, b in zip(e, d)) for e in num)
    dirs = directions(len(num[0]))
    h_num = (np.array(num, dtype=np.int64) @ dirs.T).max(axis=0)
    h_den = (np.array(den, dtype=np.int64) @ dirs.T).max(axis=0)
    cands = sorted({tuple(a - b for a, b in zip(n, d)) for n in num for d in den})
    ok = (np.array(cands, dtype=np.int64) @ dirs.T + h_den <= h_num).all(axis=1)
    kept = [c for c, good in zip(cands, ok) if good]
    if not kept:
        return None
    t = trop_canonicalize(kept)
    if trop_canonicalize(minkowski(t, den)) == num:
        return t
    exact = [c for c in kept if all(hull_contains(tuple(x + y for x, y in zip(c, d)), num) for d in den)]
    if not exact:
        return None
    t = trop_canonicalize(exact)
    if trop_canonicalize(minkowski(t, den)) == num:
        return t
    return None


class TropicalElement:
    """Element of the tropical backend: ``max(num) - max(den)``."""

    backend = "tropical"
    __slots__ = ("num", "den", "nvars")

    def __init__(self, num: Iterable[Vector], den: Iterable[Vector] | None = None, nvars: int | None = None):
        num = [tuple(e) for e in num]
        den = [tuple(e) for e in den] if den is not None else None
        if nvars is None:
            nvars = len(num[0]) if num else len(den[0])
        if den is None:
            den = [(0,) * nvars]
        if not num or not den:
            raise ValueError("tropical term sets must be nonempty")
        if any(len(e) != nvars for e in num + den):
            raise ValueError(f"exponent vectors must have length {nvars}")
        num_c = trop_canonicalize(num)
        den_c = trop_canonicalize(den)
        shift = min(den_c, key=grlex_key)
        if any(shift):
            num_c = tuple(tuple(a - b for a, b in zip(e, shift)) for e in num_c)
            den_c = tuple(tuple(a - b for a, b in zip(e, shift)) for e in den_c)
        self.num = num_c
        self.den = den_c
        self.nvars = nvars

    @classmethod
    def _raw(cls, num: tuple[Vector, ...], den: tuple[Vector, ...], nvars: int) -> TropicalElement:
        t = object.__new__(cls)
        t.num, t.den, t.nvars = num, den, nvars
        return t

    @classmethod
    def generator(cls, index: int, nvars: int) -> TropicalElement:
        e = [0] * nvars
        e[index] = 1
        return cls._raw((tuple(e),), ((0,) * nvars,), nvars)

    @classmethod
    def unit(cls, nvars: int) -> TropicalElement:
        """The multiplicative unit, i.e. the zero function."""
        z = (0,) * nvars
        return cls._raw((z,), (z,), nvars)

    def _check(self, other) -> None:
        if not isinstance(other, TropicalElement):
            raise BackendMismatch(f"cannot combine tropical element with {type(other).__name__}")
        if other.nvars != self.nvars:
            raise BackendMismatch(f"generator count mismatch: {self.nvars} vs {other.nvars}")

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    def otimes(self, other: TropicalElement) -> TropicalElement:
        self._check(other)
        return TropicalElement(minkowski(self.num, other.num), minkowski(self.den, other.den), self.nvars)

    def oplus(self, other: TropicalElement) -> TropicalElement:
        self._check(other)
        if self.den == other.den:
            return TropicalElement(set(self.num) | set(other.num), self.den, self.nvars)
        num = minkowski(self.num, other.den) | minkowski(other.num, self.den)
        return TropicalElement(num, minkowski(self.den, other.den), self.nvars)

    def oslash(self, other: TropicalElement) -> TropicalElement:
        self._check(other)
        return TropicalElement(minkowski(self.num, other.den), minkowski(self.den, other.num), self.nvars)

    def simplified(self) -> TropicalElement:
        """Rewrite as a single-denominator form when ``num`` splits off ``den``."""
        if len(self.den) == 1:
            return self
        t = trop_exact_divide(self.num, self.den)
        if t is None:
            return self
        return TropicalElement(t, None, self.nvars)

    def equals(self, other: TropicalElement) -> bool:
        self._check(other)
        if self.den == other.den:
            return self.num == other.num
        return trop_canonicalize(minkowski(self.num, other.den)) == trop_canonicalize(
            minkowski(other.num, self.den)
        )

    def evaluate(self, point) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        return trop_eval(self.num, point) - trop_eval(self.den, point)

    __mul__ = otimes
    __add__ = oplus
    __truediv__ = oslash

    def __eq__(self, other) -> bool:
        if isinstance(other, TropicalElement):
            return self.nvars == other.nvars and self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        from .text import serialize

        return f"TropicalElement({serialize(self)!r})"
