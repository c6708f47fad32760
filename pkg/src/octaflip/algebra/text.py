"""Text form of semifield elements.

Grammar (whitespace is insignificant)::

    element    := classical | tropical
    classical  := group [ "/" group ]
    group      := "(" poly ")" | poly
    poly       := ["-"] term { ("+" | "-") term }
    term       := coef [ "*" mono ] | mono
    coef       := INT [ "/" INT ]
    mono       := factor { "*" factor }
    factor     := NAME [ "^" ["-"] INT ]
    tropical   := "trop{" vec { "," vec } "}" "/" "trop{" vec { "," vec } "}"
    vec        := "[" [ ["-"] INT { "," ["-"] INT } ] "]"

``serialize`` writes terms in descending grlex order and omits a unit
coefficient.  Negative exponents of the numerator are cleared into a
monomial denominator, so ``a*c^-1 + c`` prints as ``(c^2 + a)/(c)``; a
denominator is written only when it is not 1, with both sides
parenthesised.  Parsing undoes exactly this, so the round trip is exact.
Tropical elements always show both term sets.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from ..errors import ParseError
from .classical import FieldElement
from .laurent import LaurentPolynomial
from .tropical import TropicalElement


def default_names(nvars: int) -> list[str]:
    return [f"g{i}" for i in range(nvars)]


def _coef_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono_str(e, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def serialize_poly(p: LaurentPolynomial, names: Sequence[str]) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        neg = c < 0
        a = -c if neg else c
        mono = _mono_str(e, names)
        if not mono:
            body = _coef_str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_coef_str(a)}*{mono}"
        if i == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def _vec_str(e) -> str:
    return "[" + ",".join(str(x) for x in e) + "]"


def serialize(x, names: Sequence[str] | None = None) -> str:
    """Canonical text of a classical or tropical element."""
    if isinstance(x, TropicalElement):
        num = ",".join(_vec_str(e) for e in x.num)
        den = ",".join(_vec_str(e) for e in x.den)
        return f"trop{{{num}}}/trop{{{den}}}"
    if isinstance(x, FieldElement):
        names = list(names) if names is not None else default_names(x.nvars)
        if len(names) != x.nvars:
            raise ValueError(f"need {x.nvars} generator names, got {len(names)}")
        # negative powers are cleared into a monomial denominator for display
        lift = tuple(max(0, -k) for k in x.num.min_exponent())
        num, den = x.num, x.den
        if any(lift):
            num, den = num.shift(lift), den.shift(lift)
        if den == LaurentPolynomial.constant(1, x.nvars):
            return serialize_poly(num, names)
        return f"({serialize_poly(num, names)})/({serialize_poly(den, names)})"
    raise TypeError(f"cannot serialize {type(x).__name__}")


_TOKEN = re.compile(
    r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>trop\{|[-+*/^(),\[\]{}]))"
)


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.text = text
        self.names = {n: i for i, n in enumerate(names)}
        self.nvars = len(names)
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos >= len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            val = m.group(kind)
            start = m.start(kind)
            if kind == "name" and val == "trop" and text.startswith("trop{", start):
                kind, val = "op", "trop{"
                m_end = start + 5
            else:
                m_end = m.end()
            self.toks.append((kind, val, start))
            pos = m_end
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self, val: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (val is not None and tok[1] != val) or (kind is not None and tok[0] != kind) or tok[0] == "end":
            want = repr(val) if val is not None else kind
            raise ParseError(f"expected {want}", tok[2])
        self.i += 1
        return tok

    def at(self, val: str) -> bool:
        tok = self.peek()
        return tok[0] == "op" and tok[1] == val

    def done(self) -> None:
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])

    # classical
    def group(self) -> LaurentPolynomial:
        if self.at("("):
            self.take("(")
            p = self.poly()
            self.take(")")
            return p
        return self.poly()

    def poly(self) -> LaurentPolynomial:
        terms: dict = {}
        sign = 1
        if self.at("-"):
            self.take("-")
            sign = -1
        while True:
            e, c = self.term()
            terms[e] = terms.get(e, 0) + sign * c
            if self.at("+"):
                self.take("+")
                sign = 1
            elif self.at("-"):
                self.take("-")
                sign = -1
            else:
                break
        return LaurentPolynomial(terms, self.nvars)

    def term(self):
        tok = self.peek()
        if tok[0] == "int":
            c = self.coef()
            if self.at("*"):
                self.take("*")
                return self.mono(), c
            return (0,) * self.nvars, c
        if tok[0] == "name":
            return self.mono(), Fraction(1)
        raise ParseError("expected a term", tok[2])

    def coef(self) -> Fraction:
        num = int(self.take(kind="int")[1])
        if self.at("/") and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "int":
            self.take("/")
            den_tok = self.take(kind="int")
            if int(den_tok[1]) == 0:
                raise ParseError("zero denominator", den_tok[2])
            return Fraction(num, int(den_tok[1]))
        return Fraction(num)

    def mono(self):
        e = [0] * self.nvars
        while True:
            kind, val, pos = self.take(kind="name")
            if val not in self.names:
                raise ParseError(f"unknown generator {val!r}", pos)
            k = 1
            if self.at("^"):
                self.take("^")
                s = 1
                if self.at("-"):
                    self.take("-")
                    s = -1
                k = s * int(self.take(kind="int")[1])
            e[self.names[val]] += k
            # a factor is followed by "*" only if another factor comes next
            if self.at("*") and self.i + 1 < len(self.toks) and self.toks[self.i + 1][0] == "name":
                self.take("*")
                continue
            return tuple(e)

    # tropical
    def vecset(self):
        self.take("trop{")
        out = [self.vec()]
        while self.at(","):
            self.take(",")
            out.append(self.vec())
        self.take("}")
        return out

    def vec(self):
        tok = self.take("[")
        vals = []
        if not self.at("]"):
            while True:
                s = 1
                if self.at("-"):
                    self.take("-")
                    s = -1
                vals.append(s * int(self.take(kind="int")[1]))
                if self.at(","):
                    self.take(",")
                    continue
                break
        self.take("]")
        if len(vals) != self.nvars:
            raise ParseError(f"vector of length {len(vals)}, expected {self.nvars}", tok[2])
        return tuple(vals)


def parse(text: str, backend: str, nvars: int | None = None, names: Sequence[str] | None = None):
    """Parse an element; ``names`` defaults to ``g0, g1, ...``."""
    if names is None:
        if nvars is None:
            raise ValueError("give nvars or names")
        names = default_names(nvars)
    names = list(names)
    if nvars is not None and len(names) != nvars:
        raise ValueError("names and nvars disagree")
    p = _Parser(text, names)
    if backend == "tropical":
        num = p.vecset()
        p.take("/")
        den = p.vecset()
        p.done()
        return TropicalElement(num, den, len(names))
    if backend != "classical":
        raise ValueError(f"unknown backend {backend!r}")
    num = p.group()
    den = None
    if p.at("/"):
        p.take("/")
        den = p.group()
    p.done()
    if den is not None and den.is_zero():
        raise ParseError("zero denominator", len(text))
    return FieldElement(num, den)
