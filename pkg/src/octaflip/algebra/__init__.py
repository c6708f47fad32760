"""Exact arithmetic for the classical and tropical semifield backends."""

from __future__ import annotations

from fractions import Fraction

from ..errors import BackendMismatch
from .classical import FieldElement
from .laurent import LaurentPolynomial, grlex_key, laurent_exact_divide
from .text import default_names, parse, serialize
from .tropical import TropicalElement, minkowski, trop_canonicalize

SemifieldElement = FieldElement | TropicalElement

BACKENDS = ("classical", "tropical")


def _same(x, y) -> None:
    if type(x) is not type(y):
        raise BackendMismatch(f"backend mismatch: {type(x).__name__} vs {type(y).__name__}")


def sf_otimes(x: SemifieldElement, y: SemifieldElement) -> SemifieldElement:
    _same(x, y)
    return x.otimes(y)


def sf_oplus(x: SemifieldElement, y: SemifieldElement) -> SemifieldElement:
    _same(x, y)
    return x.oplus(y)


def sf_oslash(x: SemifieldElement, y: SemifieldElement) -> SemifieldElement:
    _same(x, y)
    return x.oslash(y)


def sf_equals(x: SemifieldElement, y: SemifieldElement) -> bool:
    _same(x, y)
    return x.equals(y)


def sf_evaluate(x: SemifieldElement, point) -> Fraction:
    return x.evaluate(point)


def generator(backend: str, index: int, nvars: int) -> SemifieldElement:
    if backend == "classical":
        return FieldElement.generator(index, nvars)
    if backend == "tropical":
        return TropicalElement.generator(index, nvars)
    raise ValueError(f"unknown backend {backend!r}")


def unit(backend: str, nvars: int) -> SemifieldElement:
    """Multiplicative unit: 1 classically, the zero function tropically."""
    if backend == "classical":
        return FieldElement.constant(1, nvars)
    if backend == "tropical":
        return TropicalElement.unit(nvars)
    raise ValueError(f"unknown backend {backend!r}")


def backend_of(x: SemifieldElement) -> str:
    return x.backend


__all__ = [
    "BACKENDS",
    "FieldElement",
    "LaurentPolynomial",
    "SemifieldElement",
    "TropicalElement",
    "backend_of",
    "default_names",
    "generator",
    "grlex_key",
    "laurent_exact_divide",
    "minkowski",
    "parse",
    "serialize",
    "sf_equals",
    "sf_evaluate",
    "sf_oplus",
    "sf_oslash",
    "sf_otimes",
    "trop_canonicalize",
    "unit",
]
