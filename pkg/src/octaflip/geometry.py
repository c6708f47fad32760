"""Exact projective points and lines, and arrangements of lines in RP^2.

Faces of an arrangement are identified by sign vectors: the signs of the
line forms ``<z_j, w>`` at an interior point ``w``, one entry per line,
normalized so that the first entry is ``+1`` (``w`` and ``-w`` are the
same projective point).  Everything is computed with integers.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotGeneric, SiteNotPresent

Vec3 = tuple[int, int, int]
SignVector = tuple[int, ...]


def primitive(coords: Sequence) -> Vec3:
    """Scale rational coordinates to a primitive integer vector, keeping orientation."""
    fr = [Fraction(c) for c in coords]
    if not any(fr):
        raise ValueError("homogeneous coordinates must not all be zero")
    lcm = 1
    for c in fr:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(x // g for x in ints)


def canonical_key(coords: Sequence) -> Vec3:
    """Primitive integer vector with first nonzero entry positive."""
    v = primitive(coords)
    first = next(x for x in v if x)
    return v if first > 0 else tuple(-x for x in v)


@dataclass(frozen=True)
class ProjPoint:
    """Point (x : y : z) of RP^2."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, x, y, z=1):
        c = (Fraction(x), Fraction(y), Fraction(z))
        if not any(c):
            raise ValueError("homogeneous coordinates must not all be zero")
        object.__setattr__(self, "coords", c)

    @classmethod
    def affine(cls, x, y) -> ProjPoint:
        return cls(x, y, 1)

    @property
    def key(self) -> Vec3:
        return canonical_key(self.coords)

    def same_point(self, other: ProjPoint) -> bool:
        return self.key == other.key


@dataclass(frozen=True)
class ProjLine:
    """Line [u : v : w] of RP^2, the set u*x + v*y + w*z = 0."""

    coords: tuple[Fraction, Fraction, Fraction]

    def __init__(self, u, v, w):
        c = (Fraction(u), Fraction(v), Fraction(w))
        if not any(c):
            raise ValueError("homogeneous coordinates must not all be zero")
        object.__setattr__(self, "coords", c)

    @property
    def key(self) -> Vec3:
        return canonical_key(self.coords)

    def contains(self, p: ProjPoint) -> bool:
        return dot(self.coords, p.coords) == 0


def dualize(x: ProjPoint | ProjLine) -> ProjLine | ProjPoint:
    """Point (a:b:c) <-> line [a:b:c]; an involution."""
    if isinstance(x, ProjPoint):
        return ProjLine(*x.coords)
    return ProjPoint(*x.coords)


def dot(a: Sequence, b: Sequence):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a: Sequence, b: Sequence) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def det3(a: Sequence, b: Sequence, c: Sequence):
    return dot(a, cross(b, c))


def sign(x) -> int:
    return (x > 0) - (x < 0)


def collinear_sign(p: ProjPoint, q: ProjPoint, r: ProjPoint) -> int:
    """Sign of det of the canonical coordinate rows; 0 iff collinear."""
    return sign(det3(p.key, q.key, r.key))


def is_generic(points: Sequence[ProjPoint]) -> bool:
    keys = [p.key for p in points]
    if len(set(keys)) != len(keys):
        return False
    return all(det3(a, b, c) != 0 for a, b, c in combinations(keys, 3))


def find_degeneracy(vectors: Sequence[Vec3]) -> tuple[int, ...] | None:
    """First repeated pair or collinear triple of index positions, if any."""
    for i, j in combinations(range(len(vectors)), 2):
        if not any(cross(vectors[i], vectors[j])):
            return (i, j)
    for t in combinations(range(len(vectors)), 3):
        if det3(*(vectors[k] for k in t)) == 0:
            return t
    return None


def normalize(sv: Iterable[int]) -> SignVector:
    sv = tuple(sv)
    if sv and sv[0] < 0:
        return tuple(-s for s in sv)
    return sv


def flip_signs(sv: SignVector, idx: Iterable[int]) -> SignVector:
    out = list(sv)
    for i in idx:
        out[i] = -out[i]
    return normalize(out)


def sign_string(sv: SignVector) -> str:
    return "".join("+" if s > 0 else "-" for s in sv)


def parse_sign_string(s: str) -> SignVector:
    if not s or any(ch not in "+-" for ch in s):
        raise ValueError(f"bad sign vector {s!r}")
    return tuple(1 if ch == "+" else -1 for ch in s)


def face_sort_key(sv: SignVector) -> str:
    return sign_string(sv)


def _line_basis(u: Vec3) -> tuple[Vec3, Vec3]:
    # two independent integer vectors spanning the plane u^perp
    for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        p = cross(u, e)
        if any(p):
            return p, cross(u, p)
    raise ValueError("zero line vector")


@dataclass(frozen=True)
class FlipSite:
    """A triangular face ready to be inverted.

    ``edge[m]`` is the face across the triangle's edge on line ``m``;
    ``vertex[m]`` is the face touching the triangle only at the vertex
    opposite to that edge.  The pairs ``(edge[m], vertex[m])`` are the
    opposite pairs of the surrounding hexagon.
    """

    triple: tuple[int, int, int]
    face: SignVector
    edge: dict[int, SignVector] = field(compare=False)
    vertex: dict[int, SignVector] = field(compare=False)
    new_face: SignVector = field(compare=False)

    @classmethod
    def at(cls, triple: Sequence[int], face: SignVector) -> FlipSite:
        t = tuple(sorted(triple))
        face = normalize(face)
        edge = {m: flip_signs(face, (m,)) for m in t}
        vertex = {m: flip_signs(face, [x for x in t if x != m]) for m in t}
        return cls(t, face, edge, vertex, flip_signs(face, t))

    def pairs(self) -> list[tuple[SignVector, SignVector]]:
        return [(self.edge[m], self.vertex[m]) for m in self.triple]

    def role_faces(self) -> set[SignVector]:
        """All eight faces involved: the triangle, its hexagon and the replacement."""
        return {self.face, self.new_face, *self.edge.values(), *self.vertex.values()}

    def reverse(self) -> FlipSite:
        return FlipSite.at(self.triple, self.new_face)


@dataclass(frozen=True)
class DualArrangement:
    """Combinatorial arrangement of ``n`` lines in RP^2.

    ``lines`` are integer normal vectors in the order used for sign
    vectors.  ``vertex_order[j]`` lists the vertices on line ``j`` (as
    index pairs) in cyclic order.  ``faces`` holds normalized sign vectors.
    """

    lines: tuple[Vec3, ...]
    faces: frozenset[SignVector]
    vertex_order: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def n(self) -> int:
        return len(self.lines)

    @cached_property
    def vertices(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.n), 2))

    @cached_property
    def edge_count(self) -> int:
        # each line is a circle cut into as many arcs as it carries vertices
        return sum(len(order) for order in self.vertex_order)

    def bounding_lines(self, face: SignVector) -> tuple[int, ...]:
        """Lines contributing an edge to ``face``."""
        return tuple(j for j in range(self.n) if flip_signs(face, (j,)) in self.faces)

    @cached_property
    def adjacency(self) -> dict[SignVector, dict[int, SignVector]]:
        """``adjacency[f][j]``: the face across the edge of ``f`` on line ``j``."""
        out = {}
        for f in self.faces:
            out[f] = {j: flip_signs(f, (j,)) for j in self.bounding_lines(f)}
        return out

    @cached_property
    def triangles(self) -> list[SignVector]:
        return sorted(
            (f for f, nb in self.adjacency.items() if len(nb) == 3), key=face_sort_key
        )

    def vertex_faces(self, v: tuple[int, int]) -> set[SignVector]:
        """Faces incident to the vertex where lines ``v`` cross."""
        i, j = v
        out = set()
        for f in self.faces:
            quad = {f, flip_signs(f, (i,)), flip_signs(f, (j,)), flip_signs(f, (i, j))}
            if quad <= self.faces:
                out |= quad
        return out

    def sorted_faces(self) -> list[SignVector]:
        return sorted(self.faces, key=face_sort_key)

    def stats(self) -> dict[str, int]:
        return {
            "n": self.n,
            "V": len(self.vertices),
            "E": self.edge_count,
            "F": len(self.faces),
            "triangles": len(self.triangles),
        }

    def to_json(self) -> dict:
        return {
            "lines": [list(v) for v in self.lines],
            "faces": [sign_string(f) for f in self.sorted_faces()],
            "triangles": [sign_string(f) for f in self.triangles],
            "vertex_order": [[list(v) for v in order] for order in self.vertex_order],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def build_arrangement(points: Sequence[ProjPoint | Sequence], canonical: bool = True) -> DualArrangement:
    """Arrangement of the lines dual to ``points``.

    With ``canonical`` the lines are sorted by canonical key and oriented
    by it; otherwise the given order and representatives are kept, which is
    what a moving configuration needs for stable face identities.
    """
    vecs = []
    for p in points:
        coords = p.coords if isinstance(p, (ProjPoint, ProjLine)) else tuple(p)
        vecs.append(canonical_key(coords) if canonical else primitive(coords))
    if canonical:
        vecs.sort()
    bad = find_degeneracy(vecs)
    if bad is not None:
        kind = "repeated point" if len(bad) == 2 else "collinear triple"
        raise NotGeneric(f"{kind} {bad}", bad)
    return _build(tuple(vecs))


def _build(lines: tuple[Vec3, ...]) -> DualArrangement:
    n = len(lines)
    if n == 0:
        return DualArrangement(lines, frozenset({()}), ())
    faces: set[SignVector] = set()
    orders = []
    for j, u in enumerate(lines):
        p, q = _line_basis(u)
        pp, qq = dot(p, p), dot(q, q)
        others = [k for k in range(n) if k != j]
        params = []
        for k in others:
            v = cross(u, lines[k])
            a, b = Fraction(dot(v, p), pp), Fraction(dot(v, q), qq)
            params.append((None if b == 0 else a / b, (min(j, k), max(j, k))))
        finite = sorted((s, vx) for s, vx in params if s is not None)
        inf = [vx for s, vx in params if s is None]
        order = [vx for _, vx in finite] + inf
        orders.append(tuple(order))
        # one sample point per arc between cyclically consecutive vertices
        samples = []
        slopes = [s for s, _ in finite]
        if not params:
            samples.append(p)
        elif len(params) == 1:
            s0 = params[0][0]
            samples.append(p if s0 is not None else q)
        else:
            for a, b in zip(slopes, slopes[1:]):
                samples.append((a + b) / 2)
            if inf:
                samples.append(slopes[-1] + 1)
                samples.append(slopes[0] - 1)
            else:
                samples.append(None)
        for s in samples:
            if isinstance(s, tuple):
                w = s
            elif s is None:
                w = p
            else:
                w = tuple(s * a + b for a, b in zip(p, q))
            base = [sign(dot(lines[k], w)) for k in range(n)]
            for sj in (1, -1):
                base[j] = sj
                faces.add(normalize(base))
    return DualArrangement(lines, frozenset(faces), tuple(orders))


def flip_sites(arr: DualArrangement) -> list[FlipSite]:
    """One site per triangular face whose hexagon is fully present."""
    out = []
    for f in arr.triangles:
        site = FlipSite.at(arr.adjacency[f].keys(), f)
        if site.role_faces() - {site.new_face} <= arr.faces:
            out.append(site)
    return out


def find_site(arr: DualArrangement, triple: Sequence[int], face: SignVector) -> FlipSite:
    face = normalize(face)
    t = tuple(sorted(triple))
    if face not in arr.faces:
        raise SiteNotPresent(f"face {sign_string(face)} is not a face")
    if arr.bounding_lines(face) != t:
        raise SiteNotPresent(f"face {sign_string(face)} is not a triangle on lines {t}")
    site = FlipSite.at(t, face)
    if not site.role_faces() - {site.new_face} <= arr.faces:
        raise SiteNotPresent(f"hexagon around {sign_string(face)} is incomplete")
    return site


def apply_flip(arr: DualArrangement, site: FlipSite) -> DualArrangement:
    """Invert the triangle of ``site``; returns a new arrangement."""
    find_site(arr, site.triple, site.face)
    faces = (arr.faces - {site.face}) | {site.new_face}
    orders = [list(o) for o in arr.vertex_order]
    i, j, k = site.triple
    for m in site.triple:
        a, b = (x for x in site.triple if x != m)
        va, vb = (min(m, a), max(m, a)), (min(m, b), max(m, b))
        order = orders[m]
        ia, ib = order.index(va), order.index(vb)
        order[ia], order[ib] = vb, va
    return DualArrangement(arr.lines, frozenset(faces), tuple(tuple(o) for o in orders))


def face_sample_point(arr: DualArrangement, face: SignVector) -> tuple[int, int, int]:
    """An exact interior point of ``face`` (as a vector of the cone ``face``).

    Sums the face's vertices, each oriented into the cone; needs ``n >= 3``.
    """
    if arr.n < 3:
        raise ValueError("sample points need at least three lines")
    total = [0, 0, 0]
    count = 0
    for i, j in arr.vertices:
        if face not in arr.vertex_faces((i, j)):
            continue
        v = cross(arr.lines[i], arr.lines[j])
        ref = next(k for k in range(arr.n) if k not in (i, j))
        s = sign(dot(arr.lines[ref], v)) * face[ref]
        total = [t + s * x for t, x in zip(total, v)]
        count += 1
    if count < 3:
        raise ValueError("face has fewer than three vertices")
    return tuple(total)
