"""Shared helpers and independent oracles for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

import numpy as np

from octaflip.geometry import apply_flip, build_arrangement, find_degeneracy, flip_sites, normalize
from octaflip.motion import Trajectory, to_vectors

GRID = 10_000


def random_points(rng: random.Random, n: int, coord: int = 20) -> list[tuple[Fraction, Fraction]]:
    """Generic configuration with integer coordinates in ``[-coord, coord]``."""
    while True:
        pts = [(Fraction(rng.randint(-coord, coord)), Fraction(rng.randint(-coord, coord))) for _ in range(n)]
        if find_degeneracy(to_vectors(pts)) is None:
            return pts


def random_arrangement(rng: random.Random, n: int):
    return build_arrangement(to_vectors(random_points(rng, n)))


def random_walk(arr, rng: random.Random, length: int):
    """A random sequence of available flips and the arrangement after each."""
    sites = []
    for _ in range(length):
        site = rng.choice(flip_sites(arr))
        sites.append(site)
        arr = apply_flip(arr, site)
    return sites, arr


# --- numeric propagation oracle -------------------------------------------


def _flip(sv, idx):
    return normalize([-s if m in idx else s for m, s in enumerate(sv)])


def hexagon(face, triple):
    """Opposite face pairs around the triangle ``face`` bounded by ``triple``."""
    out = []
    for m in triple:
        others = [x for x in triple if x != m]
        out.append((_flip(face, [m]), _flip(face, others)))
    return out


def numeric_propagate(values: dict, sites, backend: str) -> dict | None:
    """Run the flips on plain numbers; ``None`` if a classical division by zero occurs."""
    vals = dict(values)
    for site in sites:
        x = vals.pop(site.face)
        prods = [(vals[a], vals[b]) for a, b in hexagon(site.face, site.triple)]
        if backend == "classical":
            if x == 0:
                return None
            new = sum(a * b for a, b in prods) / x
        else:
            new = max(a + b for a, b in prods) - x
        vals[_flip(site.face, site.triple)] = new
    return vals


# --- grid oracle for collinearity events ----------------------------------


def random_grid_trajectory(rng: random.Random, n: int, coord: int = 10) -> Trajectory:
    """Random motion with breakpoints on multiples of 1/20 and integer waypoints."""
    times, positions = [], []
    for _ in range(n):
        inner = sorted(rng.sample(range(1, 20), rng.randint(0, 3)))
        ts = [Fraction(0)] + [Fraction(k, 20) for k in inner] + [Fraction(1)]
        times.append(ts)
        positions.append([(rng.randint(-coord, coord), rng.randint(-coord, coord)) for _ in ts])
    return Trajectory.from_lists(times, positions)


def _homogeneous_grid(path, grid: int) -> np.ndarray:
    """Integer homogeneous coordinates ``(X, Y, W)`` of one point at ``t = k / grid``."""
    out = np.zeros((grid + 1, 3), dtype=np.int64)
    ks = np.arange(grid + 1)
    for (a, b), (pa, pb) in zip(zip(path.times, path.times[1:]), zip(path.positions, path.positions[1:])):
        ka, kb = int(a * grid), int(b * grid)
        sel = (ks >= ka) & (ks <= kb)
        u = ks[sel] - ka
        length = kb - ka
        # point = pa + (pb - pa) * u / length, scaled by length
        out[sel, 0] = int(pa[0]) * length + (int(pb[0]) - int(pa[0])) * u
        out[sel, 1] = int(pa[1]) * length + (int(pb[1]) - int(pa[1])) * u
        out[sel, 2] = length
    return out


def grid_events(traj: Trajectory, grid: int = GRID) -> list[tuple[int, tuple[int, int, int]]]:
    """Sign changes of every triple determinant on ``t = k / grid``.

    Returns ``(cell, triple)`` where the change happens between samples
    ``cell`` and ``cell + 1`` (exact zeros are attributed to the cell
    that ends on them and their neighbours are compared instead).
    """
    coords = [_homogeneous_grid(p, grid) for p in traj.paths]
    found = []
    for triple in combinations(range(traj.n), 3):
        a, b, c = (coords[m] for m in triple)
        det = (
            a[:, 0] * (b[:, 1] * c[:, 2] - b[:, 2] * c[:, 1])
            - a[:, 1] * (b[:, 0] * c[:, 2] - b[:, 2] * c[:, 0])
            + a[:, 2] * (b[:, 0] * c[:, 1] - b[:, 1] * c[:, 0])
        )
        s = np.sign(det)
        nz = np.nonzero(s)[0]
        for k0, k1 in zip(nz, nz[1:]):
            if s[k0] != s[k1]:
                found.append((int(k1) - 1, triple))
    found.sort()
    return found


# --- randomized engine cases ----------------------------------------------


def _labeled_state(rng: random.Random, backend: str, n: int, warmup: int):
    """Random arrangement with labels pushed through a short random walk."""
    from octaflip.engine import initial_labeling, propagate_with_arrangement

    arr = random_arrangement(rng, n)
    lab0 = initial_labeling(arr, backend)
    sites, _ = random_walk(arr, rng, warmup)
    lab, arr = propagate_with_arrangement(lab0, sites, arr)
    return lab, arr


def involution_case(rng: random.Random, backend: str, max_n: int = 6) -> bool:
    """Flip a random site and flip back; labels must return exactly."""
    from octaflip.engine import flip_label

    lab, arr = _labeled_state(rng, backend, rng.randint(3, max_n), rng.randint(0, 2))
    site = rng.choice(flip_sites(arr))
    once = flip_label(lab, site)
    twice = flip_label(once, site.reverse())
    return twice.equals(lab)


def disjoint_pair(arr, rng: random.Random):
    sites = flip_sites(arr)
    pairs = [(s, t) for s in sites for t in sites if s != t and not (s.role_faces() & t.role_faces())]
    return rng.choice(pairs) if pairs else None


def commutation_case(rng: random.Random, backend: str, n: int = 7) -> bool | None:
    """Two flips with disjoint role faces in both orders; ``None`` if no such pair.

    Below seven lines two triangles practically always share a role face, so the
    default is the smallest size where such pairs are common.
    """
    from octaflip.engine import propagate_with_arrangement

    lab, arr = _labeled_state(rng, backend, n, rng.randint(0, 2))
    pair = disjoint_pair(arr, rng)
    if pair is None:
        return None
    s, t = pair
    ab, arr_ab = propagate_with_arrangement(lab, [s, t], arr)
    ba, arr_ba = propagate_with_arrangement(lab, [t, s], arr)
    return arr_ab.faces == arr_ba.faces and ab.equals(ba)


def random_values(rng: random.Random, g: int, backend: str) -> tuple[Fraction, ...]:
    def one():
        v = Fraction(rng.randint(1, 9), rng.randint(1, 5))
        return v if backend == "tropical" or rng.random() < 0.5 else -v

    return tuple(one() for _ in range(g))


def fuzz_case(rng: random.Random, backend: str, max_n: int = 5, max_len: int = 8) -> bool | None:
    """Symbolic propagation then evaluation vs numeric propagation.

    ``None`` marks a skipped classical case (a division by zero on the
    numeric side or a vanishing denominator on the symbolic side).
    """
    from octaflip.algebra import sf_evaluate
    from octaflip.engine import initial_labeling, propagate

    # with three lines every flip squares its neighbours, so long walks
    # there blow up doubly exponentially; start at four lines
    arr = random_arrangement(rng, rng.randint(4, max_n))
    lab0 = initial_labeling(arr, backend)
    sites, _ = random_walk(arr, rng, rng.randint(1, max_len))
    lab = propagate(lab0, sites, arr)
    point = random_values(rng, lab0.nvars, backend)
    start = {face: point[r] for r, face in enumerate(arr.sorted_faces())}
    expected = numeric_propagate(start, sites, backend)
    if expected is None:
        return None
    try:
        got = {face: sf_evaluate(val, point) for face, val in lab.labels.items()}
    except ZeroDivisionError:
        return None
    return got == expected


def event_cells(traj: Trajectory, grid: int = GRID) -> list[tuple[int, tuple[int, int, int]]] | None:
    """Exact events as ``(cell, triple)`` in the oracle's convention.

    Irrational event times are refined until they sit inside one grid
    cell (they can never equal a grid sample).  ``None`` if two events
    share a cell, where the grid cannot order them.
    """
    from octaflip.motion import detect_events, order_events

    out = []
    for ev in order_events(detect_events(traj)):
        root = ev.time
        if root.is_rational:
            cell = math.floor(root.exact * grid)
        else:
            while math.floor(root.lo * grid) != math.floor(root.hi * grid):
                root.refine()
            cell = math.floor(root.lo * grid)
        out.append((cell, ev.triple))
    if len({c for c, _ in out}) != len(out):
        return None
    return out
