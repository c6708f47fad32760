"""Exact convex-hull membership and extreme-point reduction.

Vertices are first certified cheaply (a unique maximizer of an integer
functional, or an exactly checked separating direction proposed by a
floating-point LP); everything else is settled exactly.  Membership
``v in conv(S)`` is the feasibility of ``sum l_u u = v``,
``sum l_u = 1``, ``l >= 0``, decided by a phase-one simplex in integer
arithmetic with Bland's rule (so it cannot cycle).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

Vector = tuple[int, ...]

# below this many points the exact simplex is cheaper than certificates
SMALL = 32


def _reduce(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    return [x // g for x in row] if g > 1 else row


def lp_feasible(a: Sequence[Sequence], b: Sequence) -> bool:
    """Is ``{x >= 0 : a x = b}`` nonempty?  Exact phase-one simplex.

    Rows are kept as integer vectors scaled by positive factors; every
    comparison the simplex needs is sign-based, so this is exact.
    """
    m = len(a)
    if m == 0:
        return True
    n = len(a[0])
    rows = []
    for i in range(m):
        ints = list(a[i]) + [b[i]]
        if not all(isinstance(x, int) for x in ints):
            vals = [Fraction(x) for x in ints]
            scale = math.lcm(*(x.denominator for x in vals))
            ints = [int(x * scale) for x in vals]
        if ints[-1] < 0:
            ints = [-x for x in ints]
        rows.append(ints[:-1] + [1 if j == i else 0 for j in range(m)] + [ints[-1]])
    width = n + m
    basis = [n + i for i in range(m)]
    cost = [0] * (width + 1)
    for row in rows:
        for j in range(width + 1):
            if j < n or j == width:
                cost[j] -= row[j]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = -1
        for i, row in enumerate(rows):
            if row[enter] > 0:
                if leave < 0:
                    leave = i
                    continue
                # compare row[-1]/row[enter] with the current best ratio
                lhs = row[-1] * rows[leave][enter]
                rhs = rows[leave][-1] * row[enter]
                if lhs < rhs or (lhs == rhs and basis[i] < basis[leave]):
                    leave = i
        if leave < 0:  # unbounded; cannot happen for phase one
            break
        prow = rows[leave]
        piv = prow[enter]
        for i, row in enumerate(rows):
            f = row[enter]
            if i != leave and f:
                rows[i] = _reduce([piv * x - f * y for x, y in zip(row, prow)])
        f = cost[enter]
        cost = _reduce([piv * x - f * y for x, y in zip(cost, prow)])
        basis[leave] = enter
    return cost[-1] == 0


def in_convex_hull(v: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """Exact test of ``v in conv(points)``."""
    if not points:
        return False
    v = tuple(v)
    if any(tuple(p) == v for p in points):
        return True
    dim = len(v)
    # cheap separation: a coordinate where v lies strictly outside the box
    for d in range(dim):
        col = [p[d] for p in points]
        if v[d] > max(col) or v[d] < min(col):
            return False
    if len(points) == 1:
        return False
    # coordinates constant over the points give trivially satisfied rows
    live = [d for d in range(dim) if any(p[d] != points[0][d] for p in points)]
    a = [[p[d] for p in points] for d in live]
    a.append([1] * len(points))
    b = [v[d] for d in live] + [1]
    return lp_feasible(a, b)


_DIRECTIONS: dict[int, np.ndarray] = {}


def directions(dim: int) -> np.ndarray:
    if dim not in _DIRECTIONS:
        rng = np.random.default_rng(dim)
        axes = np.vstack([np.eye(dim, dtype=np.int64), -np.eye(dim, dtype=np.int64)])
        _DIRECTIONS[dim] = np.vstack([axes, rng.integers(-50, 51, size=(512, dim))])
    return _DIRECTIONS[dim]


def _certified_extreme(points: list[Vector]) -> set[int]:
    """Indices that uniquely maximize one of a fixed set of integer functionals."""
    if max(abs(x) for p in points for x in p) > 10**12:
        return set()
    arr = np.array(points, dtype=np.int64)
    vals = arr @ directions(arr.shape[1]).T
    top = vals.max(axis=0)
    hits = vals == top
    unique = hits.sum(axis=0) == 1
    return set(np.argmax(hits[:, unique], axis=0).tolist())


def _separated(p: Vector, others: list[Vector]) -> bool:
    """Exactly verified certificate that ``p`` is not in ``conv(others)``.

    A floating-point LP proposes a direction maximizing the margin; the
    direction is rounded to integers and the strict separation is then
    checked in exact arithmetic, so a ``True`` answer is always correct.
    """
    diffs = np.array([[a - b for a, b in zip(p, q)] for q in others], dtype=float)
    dim = diffs.shape[1]
    # variables (w, t): maximize t subject to <w, p - q> >= t, |w_i| <= 1
    cost = np.zeros(dim + 1)
    cost[-1] = -1.0
    a_ub = np.hstack([-diffs, np.ones((len(others), 1))])
    bounds = [(-1.0, 1.0)] * dim + [(None, 1.0)]
    res = linprog(cost, A_ub=a_ub, b_ub=np.zeros(len(others)), bounds=bounds, method="highs")
    if res.status != 0 or res.x[-1] <= 1e-9:
        return False
    for scale in (10**3, 10**6, 10**9):
        w = [int(round(x * scale)) for x in res.x[:dim]]
        if all(sum(a * b for a, b in zip(w, d)) > 0 for d in ((x - y for x, y in zip(p, q)) for q in others)):
            return True
    return False


def _solve_exact(cols: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of ``sum x_j cols[j] = b`` by Gaussian elimination, if any."""
    m, k = len(b), len(cols)
    rows = [[cols[j][i] for j in range(k)] + [b[i]] for i in range(m)]
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            return None  # dependent columns: let the simplex decide
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    if any(rows[i][-1] != 0 for i in range(r, m)):
        return None
    return [rows[i][-1] for i in range(k)]


def _member(v: Vector, points: list[Vector]) -> bool:
    """Exactly verified certificate that ``v`` is in ``conv(points)``.

    A floating-point simplex proposes a basic solution; its support is
    re-solved in rational arithmetic and checked for nonnegativity.
    """
    dim = len(v)
    live = [d for d in range(dim) if any(p[d] != points[0][d] for p in points)]
    a = np.array([[p[d] for p in points] for d in live] + [[1] * len(points)], dtype=float)
    b = np.array([v[d] for d in live] + [1], dtype=float)
    res = linprog(np.zeros(len(points)), A_eq=a, b_eq=b, bounds=(0, None), method="highs-ds")
    if res.status != 0:
        return False
    support = [j for j, x in enumerate(res.x) if x > 1e-12]
    if not support or len(support) > len(live) + 1:
        return False
    cols = [[Fraction(points[j][d]) for d in live] + [Fraction(1)] for j in support]
    lam = _solve_exact(cols, [Fraction(v[d]) for d in live] + [Fraction(1)])
    return lam is not None and all(x >= 0 for x in lam)


def hull_contains(v: Sequence[int], points: Sequence[Sequence[int]]) -> bool:
    """``v in conv(points)``: certificates first on large sets, then the exact simplex."""
    pts = [tuple(p) for p in points]
    if len(pts) > SMALL:
        v = tuple(v)
        if _separated(v, pts):
            return False
        if _member(v, pts):
            return True
    return in_convex_hull(v, pts)


def _midpoints(pts: list[Vector]) -> set[Vector]:
    """Points that are the midpoint of two other points of the set (never vertices).

    Candidates come from a linear hash ``h(p) = <r, p>`` (wrapping int64
    arithmetic keeps ``h(q1) + h(q2) = h(2p)`` exact modulo 2^64); every
    candidate pair is then checked coordinate by coordinate.
    """
    if max(abs(x) for p in pts for x in p) > 10**12:
        return set()
    arr = np.array(pts, dtype=np.int64)
    r = np.random.default_rng(len(pts[0])).integers(1, 2**62, size=arr.shape[1], dtype=np.int64)
    with np.errstate(over="ignore"):
        h = arr @ r
        target = {int(x): k for k, x in enumerate(2 * h)}
        keys = np.array(sorted(target), dtype=np.int64)
        out = set()
        step = max(1, 2_000_000 // len(pts))
        for lo in range(0, len(pts), step):
            block = h[lo : lo + step, None] + h[None, :]
            for a, b in zip(*np.nonzero(np.isin(block, keys))):
                a, b = int(a) + lo, int(b)
                if a >= b:
                    continue
                p = pts[target[int(block[a - lo, b])]]
                if all(2 * x == y + z for x, y, z in zip(p, pts[a], pts[b])):
                    out.add(p)
    return out


def extreme_points(points) -> list[Vector]:
    """Vertices of ``conv(points)``, sorted ascending; duplicates removed."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    sure = {pts[i] for i in _certified_extreme(pts)}
    inner = _midpoints(pts) - sure
    keep = [p for p in pts if p not in inner]
    for p in list(keep):
        if p in sure:
            continue
        others = [q for q in keep if q != p]
        if hull_contains(p, others):
            keep = others
    return keep
