from __future__ import annotations

import random
from fractions import Fraction

import pytest

from octaflip.roots import (
    AlgebraicRoot,
    QuadPoly,
    compare_roots,
    compare_with_rational,
    rational_sqrt,
    real_roots,
    simplest_between,
    sqrt_bounds,
)

F = Fraction


def q(c2, c1, c0) -> QuadPoly:
    return QuadPoly(F(c2), F(c1), F(c0))


def test_rational_sqrt():
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    assert rational_sqrt(F(2)) is None
    assert rational_sqrt(F(-1)) is None


def test_sqrt_bounds_bracket():
    for bits in (4, 16, 40):
        lo, hi = sqrt_bounds(F(2), bits)
        assert lo * lo < 2 < hi * hi
        assert hi - lo <= F(1, 2**bits)


def test_linear_and_constant():
    ((r, m),) = real_roots(q(0, 2, -1))
    assert r.exact == F(1, 2) and m == 1
    assert real_roots(q(0, 0, 5)) == []
    with pytest.raises(ValueError):
        real_roots(q(0, 0, 0))


def test_rational_quadratic_roots():
    roots = real_roots(q(1, -2, F(3, 4)))
    assert [r.exact for r, _ in roots] == [F(1, 2), F(3, 2)]


def test_double_root_has_multiplicity_two():
    ((r, m),) = real_roots(q(4, -4, 1))
    assert r.exact == F(1, 2) and m == 2


def test_no_real_roots():
    assert real_roots(q(1, 0, 1)) == []


def test_irrational_roots_isolated():
    (lo, _), (hi, _) = real_roots(q(1, 0, -2))
    assert lo.exact is None and hi.exact is None
    assert lo.hi < hi.lo
    hi.refine_to(F(1, 10**12))
    assert abs(float(hi) - 2**0.5) < 1e-11
    assert compare_with_rational(hi, F(141421, 100000)) > 0
    assert compare_with_rational(hi, F(141422, 100000)) < 0


def test_equal_irrational_roots_from_scaled_polys():
    a = real_roots(q(1, 0, -2))[1][0]
    b = real_roots(q(3, 0, -6))[1][0]
    assert compare_roots(a, b) == 0
    assert hash(a) == hash(b)


def test_ordering_matches_floats():
    rng = random.Random(1)
    roots: list[AlgebraicRoot] = []
    while len(roots) < 200:
        p = q(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(-9, 9))
        if p.is_zero():
            continue
        roots.extend(r for r, _ in real_roots(p))
    for a, b in zip(roots, roots[1:]):
        c = compare_roots(a, b)
        fa, fb = float(a), float(b)
        if abs(fa - fb) > 1e-9:
            assert c == (1 if fa > fb else -1)


def test_simplest_between():
    assert simplest_between(F(1, 3), F(1, 2)) == F(2, 5)
    assert simplest_between(F(-1), F(1)) == 0
    assert simplest_between(F(2), F(7, 2)) == 3
    assert simplest_between(F(-1, 2), F(-1, 3)) == F(-2, 5)
    rng = random.Random(2)
    for _ in range(300):
        a = F(rng.randint(-100, 100), rng.randint(1, 50))
        b = a + F(rng.randint(1, 30), rng.randint(1, 200))
        s = simplest_between(a, b)
        assert a < s < b
        # nothing with a smaller denominator lies strictly inside
        for d in range(1, s.denominator):
            lo = a * d
            k = int(lo) + 1 if lo >= 0 or lo == int(lo) else int(lo)
            while F(k, d) <= a:
                k += 1
            assert not F(k, d) < b
    with pytest.raises(ValueError):
        simplest_between(F(1), F(1))
