"""Piecewise-linear motions of points and their collinearity events.

Points move in the affine chart z = 1.  For each triple and each segment
between consecutive breakpoints, the orientation determinant is a
polynomial of degree at most two in t; its simple roots are the events.
All geometry downstream is evaluated at rational sample times chosen
strictly between consecutive events.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

from .errors import (
    DegenerateEvent,
    EndpointEvent,
    IdenticallyZero,
    InvalidInput,
    NotGeneric,
    ObstructedTriangle,
    SimultaneousEvents,
)
from .geometry import (
    DualArrangement,
    FlipSite,
    SignVector,
    apply_flip,
    build_arrangement,
    find_degeneracy,
    normalize,
    sign,
    sign_string,
)
from .roots import AlgebraicRoot, QuadPoly, compare_roots, compare_with_rational, real_roots, simplest_between

log = logging.getLogger(__name__)

Point2 = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class PointPath:
    times: tuple[Fraction, ...]
    positions: tuple[Point2, ...]

    def at(self, t: Fraction) -> Point2:
        ts = self.times
        if t <= ts[0]:
            return self.positions[0]
        for a, b, pa, pb in zip(ts, ts[1:], self.positions, self.positions[1:]):
            if a <= t <= b:
                if t == a:
                    return pa
                if t == b:
                    return pb
                s = (t - a) / (b - a)
                return (pa[0] + (pb[0] - pa[0]) * s, pa[1] + (pb[1] - pa[1]) * s)
        return self.positions[-1]


@dataclass(frozen=True)
class Trajectory:
    """Motion of ``n`` labelled points over t in [0, 1]."""

    paths: tuple[PointPath, ...]

    def __post_init__(self):
        for j, p in enumerate(self.paths):
            if len(p.times) != len(p.positions) or len(p.times) < 2:
                raise InvalidInput(f"path {j}: need matching times and positions (at least two)")
            if p.times[0] != 0 or p.times[-1] != 1:
                raise InvalidInput(f"path {j}: times must run from 0 to 1")
            if any(b <= a for a, b in zip(p.times, p.times[1:])):
                raise InvalidInput(f"path {j}: times must be strictly increasing")

    @classmethod
    def constant(cls, points: Sequence[Point2]) -> Trajectory:
        return cls.from_lists([[0, 1]] * len(points), [[p, p] for p in points])

    @classmethod
    def from_lists(cls, times, positions) -> Trajectory:
        paths = []
        for ts, ps in zip(times, positions):
            paths.append(
                PointPath(
                    tuple(Fraction(t) for t in ts),
                    tuple((Fraction(x), Fraction(y)) for x, y in ps),
                )
            )
        return cls(tuple(paths))

    @property
    def n(self) -> int:
        return len(self.paths)

    @property
    def breakpoints(self) -> list[Fraction]:
        return sorted({t for p in self.paths for t in p.times})

    def at(self, t) -> list[Point2]:
        t = Fraction(t)
        return [p.at(t) for p in self.paths]

    def reversed(self) -> Trajectory:
        paths = []
        for p in self.paths:
            paths.append(PointPath(tuple(1 - t for t in reversed(p.times)), tuple(reversed(p.positions))))
        return Trajectory(tuple(paths))


@dataclass(eq=False)
class MotionEvent:
    triple: tuple[int, int, int]
    time: AlgebraicRoot
    segment: int
    sign_before: int
    sign_after: int

    def interval(self) -> tuple[Fraction, Fraction]:
        return self.time.interval()


@dataclass(frozen=True)
class FlipRecord:
    triple: tuple[int, int, int]
    face: SignVector
    t_before: Fraction
    t_after: Fraction

    @property
    def site(self) -> FlipSite:
        return FlipSite.at(self.triple, self.face)

    @property
    def new_face(self) -> SignVector:
        return self.site.new_face


@dataclass
class FlipScript:
    records: list[FlipRecord] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    def sites(self) -> list[FlipSite]:
        return [r.site for r in self.records]

    def truncated(self, length: int) -> FlipScript:
        return FlipScript(self.records[:length])


def to_vectors(points: Sequence[Point2]) -> list[tuple[Fraction, Fraction, int]]:
    return [(Fraction(x), Fraction(y), 1) for x, y in points]


def arrangement_at(traj: Trajectory, t) -> DualArrangement:
    """Arrangement at time ``t`` with lines in strand order, chart orientation."""
    return build_arrangement(to_vectors(traj.at(t)), canonical=False)


def _linear(pa: Point2, pb: Point2, a: Fraction, b: Fraction):
    # position = alpha + beta * t on [a, b]
    bx = (pb[0] - pa[0]) / (b - a)
    by = (pb[1] - pa[1]) / (b - a)
    return (pa[0] - bx * a, pa[1] - by * a), (bx, by)


def orientation_poly(traj: Trajectory, triple: Sequence[int], a: Fraction, b: Fraction) -> QuadPoly:
    """Orientation determinant of ``triple`` on [a, b] as a polynomial in t."""
    i, j, k = triple
    lin = {m: _linear(traj.paths[m].at(a), traj.paths[m].at(b), a, b) for m in (i, j, k)}
    (ai, bi), (aj, bj), (ak, bk) = lin[i], lin[j], lin[k]
    # differences p_j - p_i = A + B t, p_k - p_i = C + D t
    A = (aj[0] - ai[0], aj[1] - ai[1])
    B = (bj[0] - bi[0], bj[1] - bi[1])
    C = (ak[0] - ai[0], ak[1] - ai[1])
    D = (bk[0] - bi[0], bk[1] - bi[1])
    c2 = B[0] * D[1] - D[0] * B[1]
    c1 = A[0] * D[1] + B[0] * C[1] - C[0] * B[1] - D[0] * A[1]
    c0 = A[0] * C[1] - C[0] * A[1]
    return QuadPoly(c2, c1, c0)


def detect_events(traj: Trajectory) -> list[MotionEvent]:
    """All transversal collinearity events, grouped by triple (unsorted in time)."""
    bps = traj.breakpoints
    events = []
    for triple in combinations(range(traj.n), 3):
        for seg, (a, b) in enumerate(zip(bps, bps[1:])):
            q = orientation_poly(traj, triple, a, b)
            if q.is_zero():
                raise IdenticallyZero(f"triple {triple} collinear on [{a}, {b}]", triple, (a, b))
            for t in (a, b):
                if q(t) == 0:
                    raise EndpointEvent(f"triple {triple} collinear at breakpoint t = {t}", triple, (t, t))
            s = sign(q(a))
            for root, mult in real_roots(q):
                if compare_with_rational(root, a) <= 0 or compare_with_rational(root, b) >= 0:
                    continue
                if mult > 1:
                    raise DegenerateEvent(
                        f"triple {triple} touches collinearity without crossing at t = {root.exact}",
                        triple,
                        root.interval(),
                    )
                # shrink the interval into the segment
                while root.lo < a or root.hi > b:
                    root.refine()
                events.append(MotionEvent(triple, root, seg, s, -s))
                s = -s
    return events


def order_events(events: list[MotionEvent]) -> list[MotionEvent]:
    """Sort by exact time; equal times are a non-generic motion."""
    out = sorted(events, key=cmp_to_key(lambda x, y: compare_roots(x.time, y.time)))
    for x, y in zip(out, out[1:]):
        if compare_roots(x.time, y.time) == 0:
            raise SimultaneousEvents(
                f"triples {x.triple} and {y.triple} are collinear at the same instant",
                (x.triple, y.triple),
                x.interval(),
            )
    return out


def sample_times(events: list[MotionEvent]) -> list[Fraction]:
    """``0``, a rational strictly between each pair of consecutive events, ``1``."""
    out = [Fraction(0)]
    for x, y in zip(events, events[1:]):
        while not x.time.hi < y.time.lo:
            x.time.refine()
            y.time.refine()
            if x.time.is_rational and y.time.is_rational:
                break
        out.append(simplest_between(x.time.hi, y.time.lo))
    out.append(Fraction(1))
    return out


def _coord_at(traj: Trajectory, m: int, axis: int, seg: tuple[Fraction, Fraction]):
    a, b = seg
    alpha, beta = _linear(traj.paths[m].at(a), traj.paths[m].at(b), a, b)
    return alpha[axis], beta[axis]


def _sign_at_root(alpha: Fraction, beta: Fraction, root: AlgebraicRoot) -> int:
    # sign of alpha + beta * t at t = root
    if beta == 0:
        return sign(alpha)
    return sign(beta) * compare_with_rational(root, -alpha / beta)


def middle_point(traj: Trajectory, ev: MotionEvent) -> int:
    """Index of the point lying between the other two at the event."""
    bps = traj.breakpoints
    seg = (bps[ev.segment], bps[ev.segment + 1])
    i, j, k = ev.triple
    for axis in (0, 1):
        lin = {m: _coord_at(traj, m, axis, seg) for m in ev.triple}

        def cmp(u, v):
            return _sign_at_root(lin[u][0] - lin[v][0], lin[u][1] - lin[v][1], ev.time)

        if cmp(i, j) == 0 and cmp(i, k) == 0:
            continue  # common line is parallel to this axis
        for m in ev.triple:
            u, v = (x for x in ev.triple if x != m)
            if cmp(m, u) * cmp(m, v) < 0:
                return m
    raise ObstructedTriangle(f"points of {ev.triple} coincide at the event", ev.triple, ev.interval())


def collapsing_signs(traj: Trajectory, ev: MotionEvent, t_before: Fraction) -> tuple[int, int, int]:
    """Signs, on the event's three lines, of the triangle that shrinks to a point.

    Writing the third point as ``l*p_i + m*p_j`` at the event, the small
    triangle is spanned by the nearly parallel vertex vectors
    ``p_i x p_j``, ``-sgn(l) p_j x p_k`` and ``-sgn(m) p_k x p_i``, whose
    signs on the lines are ``sgn(D) * (-sgn l, -sgn m, +)``.
    """
    i, j, k = ev.triple
    pts = to_vectors(traj.at(t_before))
    d = sign(_det(pts[i], pts[j], pts[k]))
    mid = middle_point(traj, ev)
    # l + m = 1 in the chart; the middle point decides the signs of l, m
    lam, mu = {k: (1, 1), j: (-1, 1), i: (1, -1)}[mid]
    return (-lam * d, -mu * d, d)


def _det(a, b, c):
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])


def _collapsing_face(arr: DualArrangement, triple, signs) -> SignVector:
    neg = tuple(-s for s in signs)
    found = []
    for f in arr.triangles:
        if arr.bounding_lines(f) != tuple(triple):
            continue
        restr = tuple(f[m] for m in triple)
        if restr == tuple(signs) or restr == neg:
            found.append(f)
    if len(found) != 1:
        raise ObstructedTriangle(
            f"expected one collapsing triangle on lines {triple}, found {len(found)}", tuple(triple)
        )
    return found[0]


def compile_flip_script(traj: Trajectory, start: Sequence[Point2] | None = None) -> FlipScript:
    """Turn a motion into the sequence of triangle inversions it performs."""
    if start is not None:
        pos0 = traj.at(0)
        if [tuple(map(Fraction, p)) for p in start] != pos0:
            raise InvalidInput("trajectory does not start at the given configuration")
    for t in (0, 1):
        bad = find_degeneracy(to_vectors(traj.at(t)))
        if bad is not None:
            raise NotGeneric(f"configuration at t = {t} is not generic: {bad}", bad)
    events = order_events(detect_events(traj))
    times = sample_times(events)
    arrs = [arrangement_at(traj, t) for t in times]
    records = []
    for m, ev in enumerate(events):
        t0, t1 = times[m], times[m + 1]
        before, after = arrs[m], arrs[m + 1]
        signs = collapsing_signs(traj, ev, t0)
        face = _collapsing_face(before, ev.triple, signs)
        site = FlipSite.at(ev.triple, face)
        flipped = apply_flip(before, site)
        if flipped.faces != after.faces:
            raise ObstructedTriangle(
                f"flip of {sign_string(face)} on {ev.triple} does not reproduce the arrangement at t = {t1}",
                ev.triple,
                ev.interval(),
            )
        records.append(FlipRecord(ev.triple, face, t0, t1))
    log.debug("compiled %d flips from %d events", len(records), len(events))
    return FlipScript(records)


_LETTER = re.compile(r"^s(\d+)(?:\^(-?1))?$")


def parse_word(word: str) -> list[tuple[int, int]]:
    """``"s1 s2^-1"`` -> ``[(1, 1), (2, -1)]``."""
    out = []
    for tok in word.split():
        m = _LETTER.match(tok)
        if not m:
            raise InvalidInput(f"bad braid letter {tok!r}")
        out.append((int(m.group(1)), int(m.group(2) or 1)))
    return out


def _half_turn(steps: int) -> list[tuple[Fraction, Fraction]]:
    # exact rational points (cos, sin) on the unit circle from angle 0 to pi
    pts = [(Fraction(1), Fraction(0))]
    for m in range(1, steps):
        u = Fraction(math.tan(math.pi * m / (2 * steps))).limit_denominator(1000)
        d = 1 + u * u
        pts.append(((1 - u * u) / d, 2 * u / d))
    pts.append((Fraction(-1), Fraction(0)))
    return pts


def braid_word_to_trajectory(word, base: Sequence[Point2], arc_segments: int = 8) -> Trajectory:
    """Realize a braid word as a closed piecewise-linear motion of ``base``.

    Letter ``s_i`` (``i`` counted from 1) rotates the ``i``-th and
    ``i+1``-th points from the left by a half turn about their midpoint,
    counterclockwise; ``s_i^-1`` turns clockwise.
    """
    letters = parse_word(word) if isinstance(word, str) else list(word)
    base = [(Fraction(x), Fraction(y)) for x, y in base]
    n = len(base)
    if len({p[0] for p in base}) != n:
        raise InvalidInput("base points need distinct x-coordinates")
    bad = find_degeneracy(to_vectors(base))
    if bad is not None:
        raise NotGeneric(f"base configuration is not generic: {bad}", bad)
    if arc_segments < 2:
        raise InvalidInput("arc_segments must be at least 2")
    for i, _ in letters:
        if not 1 <= i < n:
            raise InvalidInput(f"generator s{i} needs at least {i + 1} points")
    if not letters:
        return Trajectory.constant(base)
    circle = _half_turn(arc_segments)
    total = len(letters) * arc_segments
    times = [Fraction(s, total) for s in range(total + 1)]
    current = list(base)
    positions = [[p] for p in current]
    for i, direction in letters:
        order = sorted(range(n), key=lambda s: current[s][0])
        left, right = order[i - 1], order[i]
        p, q = current[left], current[right]
        c = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
        v = ((q[0] - p[0]) / 2, (q[1] - p[1]) / 2)
        for cos, sin in circle[1:]:
            sin = sin * direction
            rv = (cos * v[0] - sin * v[1], sin * v[0] + cos * v[1])
            for s in range(n):
                if s == left:
                    positions[s].append((c[0] - rv[0], c[1] - rv[1]))
                elif s == right:
                    positions[s].append((c[0] + rv[0], c[1] + rv[1]))
                else:
                    positions[s].append(current[s])
            snap = [positions[s][-1] for s in range(n)]
            bad = find_degeneracy(to_vectors(snap))
            if bad is not None:
                raise NotGeneric(f"arc breakpoint is not generic for {bad}; change arc_segments", bad)
        current = [positions[s][-1] for s in range(n)]
    return Trajectory.from_lists([times] * n, positions)


def realized_permutation(traj: Trajectory) -> list[int]:
    """``perm[j]``: index of the starting point where strand ``j`` ends."""
    start = traj.at(0)
    end = traj.at(1)
    index = {p: i for i, p in enumerate(start)}
    perm = []
    for p in end:
        if p not in index:
            raise KeyError(p)
        perm.append(index[p])
    return perm


def retime(traj: Trajectory, knots: Sequence[tuple]) -> Trajectory:
    """Reparameterize time by the increasing piecewise-linear map through ``knots``.

    ``knots`` are ``(old, new)`` pairs including ``(0, 0)`` and ``(1, 1)``;
    the path traced by every point is unchanged.
    """
    knots = [(Fraction(a), Fraction(b)) for a, b in knots]
    if knots[0] != (0, 0) or knots[-1] != (1, 1):
        raise InvalidInput("time knots must start at (0, 0) and end at (1, 1)")
    if any(b[0] <= a[0] or b[1] <= a[1] for a, b in zip(knots, knots[1:])):
        raise InvalidInput("time knots must be strictly increasing")

    def phi(t: Fraction) -> Fraction:
        for (a0, b0), (a1, b1) in zip(knots, knots[1:]):
            if a0 <= t <= a1:
                return b0 + (b1 - b0) * (t - a0) / (a1 - a0)
        raise AssertionError(t)

    paths = []
    for p in traj.paths:
        ts = sorted(set(p.times) | {a for a, _ in knots})
        paths.append(PointPath(tuple(phi(t) for t in ts), tuple(p.at(t) for t in ts)))
    return Trajectory(tuple(paths))


def concatenate(first: Trajectory, second: Trajectory, split=Fraction(1, 2)) -> Trajectory:
    """``first`` on ``[0, split]`` followed by ``second`` on ``[split, 1]``."""
    split = Fraction(split)
    if first.n != second.n or first.at(1) != second.at(0):
        raise InvalidInput("trajectories do not join up")
    paths = []
    for p, q in zip(first.paths, second.paths):
        times = [t * split for t in p.times] + [split + t * (1 - split) for t in q.times[1:]]
        paths.append(PointPath(tuple(times), p.positions + q.positions[1:]))
    return Trajectory(tuple(paths))


def excursion(points: Sequence[Point2], strand: int, target: Point2) -> Trajectory:
    """Move one point straight to ``target`` and back; the rest stay put."""
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    target = (Fraction(target[0]), Fraction(target[1]))
    half = Fraction(1, 2)
    times, positions = [], []
    for j, p in enumerate(pts):
        if j == strand:
            times.append([0, half, 1])
            positions.append([p, target, p])
        else:
            times.append([0, 1])
            positions.append([p, p])
    return Trajectory.from_lists(times, positions)
