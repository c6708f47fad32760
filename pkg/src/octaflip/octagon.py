"""Symbolic check of the octagon relation on eleven symbols ``a`` .. ``k``.

Eight flips are performed in turn; each replaces one label by
``(sum of three products) / old``:

    l = (a j + b k + c h) / i        q = (h o + a p + b g) / n
    m = (c f + d k + e l) / j        r = (b e + c p + d q) / o
    n = (f a + g l + h m) / k        s = (e h + f q + g r) / p
    o = (a d + b m + c n) / l
    p = (d g + e n + f o) / m

After the eighth flip the labels ``q, r, s`` must equal ``i, j, k``.  The
fifth flip is not printed in the source computation; the form above was
recovered by matching ``p * m`` against products of the labels present at
that moment and is checked against the closed form ``(e h + f i + g j) / k``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import SemifieldElement, generator, serialize, sf_equals, unit
from .engine import flip_value
from .errors import RelationFailed

SYMBOLS = tuple("abcdefghijk")

# (new label, ((x, y), (x, y), (x, y)), replaced label)
FLIPS = (
    ("l", (("a", "j"), ("b", "k"), ("c", "h")), "i"),
    ("m", (("c", "f"), ("d", "k"), ("e", "l")), "j"),
    ("n", (("f", "a"), ("g", "l"), ("h", "m")), "k"),
    ("o", (("a", "d"), ("b", "m"), ("c", "n")), "l"),
    ("p", (("d", "g"), ("e", "n"), ("f", "o")), "m"),
    ("q", (("h", "o"), ("a", "p"), ("b", "g")), "n"),
    ("r", (("b", "e"), ("c", "p"), ("d", "q")), "o"),
    ("s", (("e", "h"), ("f", "q"), ("g", "r")), "p"),
)

# corrupted fifth flip used as a negative control
_BROKEN_P = ("p", (("d", "g"), ("e", "n"), ("f", "n")), "m")

# printed expansions: numerator monomials / denominator monomial
EXPANSIONS = (
    ("l", ["a j", "b k", "c h"], "i"),
    ("m", ["c f i", "d k i", "e a j", "e b k", "e c h"], "i j"),
    (
        "n",
        ["f a i j", "g a j j", "g b k j", "g c h j", "h c f i", "h d k i", "h e a j", "h e b k", "e c h h"],
        "i j k",
    ),
    ("o", ["b e k", "d i k", "c g j", "c f i", "c e h"], "j k"),
)
CLOSURES = (("q", "i"), ("r", "j"), ("s", "k"))
DERIVED_P = ("p", ["e h", "f i", "g j"], "k")


@dataclass(frozen=True)
class Check:
    name: str
    lhs: str
    rhs: str
    ok: bool

    def line(self) -> str:
        mark = "ok" if self.ok else "FAILED"
        return f"{self.name}: {self.lhs} == {self.rhs} [{mark}]"


def _monomial(word: str, gens: dict[str, SemifieldElement], one: SemifieldElement) -> SemifieldElement:
    out = one
    for sym in word.split():
        out = out.otimes(gens[sym])
    return out


def _expansion(num: list[str], den: str, gens, one) -> SemifieldElement:
    total = None
    for word in num:
        term = _monomial(word, gens, one)
        total = term if total is None else total.oplus(term)
    return total.oslash(_monomial(den, gens, one))


def run_flips(backend: str, corrupt: bool = False) -> dict[str, SemifieldElement]:
    """All nineteen labels a .. s after running the eight flips."""
    g = len(SYMBOLS)
    vals = {s: generator(backend, r, g) for r, s in enumerate(SYMBOLS)}
    for step in FLIPS:
        if corrupt and step[0] == "p":
            step = _BROKEN_P
        new, pairs, old = step
        vals[new] = flip_value(vals[old], [(vals[x], vals[y]) for x, y in pairs])
    return vals


def octagon_checks(backend: str, corrupt: bool = False) -> list[Check]:
    """Every identity of the relation, in order, without raising."""
    vals = run_flips(backend, corrupt)
    gens = {s: vals[s] for s in SYMBOLS}
    one = unit(backend, len(SYMBOLS))
    names = list(SYMBOLS)

    def show(x):
        return serialize(x, names)

    out = []
    for name, num, den in EXPANSIONS:
        rhs = _expansion(num, den, gens, one)
        out.append(Check(f"{name} = expansion", show(vals[name]), show(rhs), sf_equals(vals[name], rhs)))
    for name, target in CLOSURES:
        out.append(Check(f"{name} = {target}", show(vals[name]), show(vals[target]), sf_equals(vals[name], vals[target])))
    name, num, den = DERIVED_P
    rhs = _expansion(num, den, gens, one)
    out.append(Check("p = (e h + f i + g j)/k", show(vals[name]), show(rhs), sf_equals(vals[name], rhs)))
    return out


def verify_octagon(backend: str, corrupt: bool = False) -> list[Check]:
    """Run all checks; raise :class:`RelationFailed` on the first failure."""
    checks = octagon_checks(backend, corrupt)
    for c in checks:
        if not c.ok:
            raise RelationFailed(c.name, c.lhs, c.rhs)
    return checks
