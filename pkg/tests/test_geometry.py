from __future__ import annotations

import random
from fractions import Fraction

import pytest

from octaflip.errors import NotGeneric, SiteNotPresent
from octaflip.geometry import (
    FlipSite,
    ProjLine,
    ProjPoint,
    apply_flip,
    build_arrangement,
    collinear_sign,
    dot,
    dualize,
    face_sample_point,
    find_site,
    flip_sites,
    is_generic,
    normalize,
    parse_sign_string,
    sign,
    sign_string,
)

from _support import random_arrangement, random_points


def test_dualize_examples():
    assert dualize(ProjPoint(0, 0, 1)).key == (0, 0, 1)
    p = ProjPoint(1, 2, 3)
    assert dualize(p).key == (1, 2, 3)
    assert dualize(dualize(p)).key == p.key
    assert isinstance(dualize(ProjLine(1, 0, 0)), ProjPoint)


def test_canonical_key_is_primitive_with_positive_lead():
    assert ProjPoint(Fraction(-1, 2), -1, Fraction(-3, 2)).key == (1, 2, 3)
    assert ProjPoint(0, -4, 6).key == (0, 2, -3)
    with pytest.raises(ValueError):
        ProjPoint(0, 0, 0)


def test_collinear_sign_examples():
    assert collinear_sign(ProjPoint(0, 0, 1), ProjPoint(1, 0, 1), ProjPoint(2, 0, 1)) == 0
    assert collinear_sign(ProjPoint(0, 0, 1), ProjPoint(1, 0, 1), ProjPoint(0, 1, 1)) != 0
    assert collinear_sign(ProjPoint(1, 0, 0), ProjPoint(0, 1, 0), ProjPoint(1, 1, 0)) == 0


def test_is_generic_examples():
    tri = [ProjPoint(0, 0), ProjPoint(1, 0), ProjPoint(0, 1)]
    assert is_generic(tri)
    assert not is_generic(tri + [ProjPoint(2, 0, 2)])  # repeated point (1:0:1)
    assert not is_generic(tri + [ProjPoint(2, 0)])  # collinear with the first two


@pytest.mark.parametrize(
    "n, counts",
    [(2, (1, 2, 2)), (3, (3, 6, 4)), (4, (6, 12, 7))],
)
def test_small_counts(n, counts):
    pts = [(0, 0), (1, 0), (0, 1), (3, 7)][:n]
    arr = build_arrangement([(x, y, 1) for x, y in pts])
    st = arr.stats()
    assert (st["V"], st["E"], st["F"]) == counts


def test_three_lines_all_faces_are_triangles():
    arr = build_arrangement([(0, 0, 1), (1, 0, 1), (0, 1, 1)])
    assert len(arr.triangles) == 4
    sites = flip_sites(arr)
    assert len(sites) == 4
    for s in sites:
        # in RP^2 with three lines, edge and vertex neighbours coincide
        for m in s.triple:
            assert s.edge[m] == s.vertex[m]
        assert s.new_face == s.face


def test_build_rejects_degenerate():
    with pytest.raises(NotGeneric):
        build_arrangement([(0, 0, 1), (1, 0, 1), (2, 0, 1)])
    with pytest.raises(NotGeneric):
        build_arrangement([(0, 0, 1), (0, 0, 2), (1, 1, 1)])


def test_sign_strings():
    assert sign_string((1, -1, 1)) == "+-+"
    assert parse_sign_string("+-+") == (1, -1, 1)
    assert normalize((-1, 1, -1)) == (1, -1, 1)
    with pytest.raises(ValueError):
        parse_sign_string("+x")


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_counts_and_valence_random(n):
    rng = random.Random(100 + n)
    for _ in range(10):
        arr = random_arrangement(rng, n)
        st = arr.stats()
        assert st["V"] == n * (n - 1) // 2
        assert st["E"] == n * (n - 1)
        assert st["F"] == n * (n - 1) // 2 + 1
        assert st["V"] - st["E"] + st["F"] == 1
        for v in arr.vertices:
            assert len(arr.vertex_faces(v)) == 4


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sample_points_reproduce_sign_vectors(n):
    rng = random.Random(200 + n)
    arr = random_arrangement(rng, n)
    for face in arr.faces:
        p = face_sample_point(arr, face)
        signs = normalize([sign(dot(line, p)) for line in arr.lines])
        assert signs == face


def test_adjacency_is_symmetric():
    rng = random.Random(3)
    arr = random_arrangement(rng, 5)
    adj = arr.adjacency
    for face, nbrs in adj.items():
        for m, other in nbrs.items():
            assert adj[other][m] == face


@pytest.mark.parametrize("n", [4, 5, 6])
def test_flip_then_reverse_restores_structure(n):
    rng = random.Random(300 + n)
    arr = random_arrangement(rng, n)
    for site in flip_sites(arr):
        after = apply_flip(arr, site)
        assert after.faces == (arr.faces - {site.face}) | {site.new_face}
        rev = find_site(after, site.triple, site.new_face)
        assert rev == site.reverse()
        assert rev in flip_sites(after)
        back = apply_flip(after, rev)
        assert back.faces == arr.faces
        assert back.vertex_order == arr.vertex_order


def test_flip_matches_geometric_rebuild():
    # move one point across the line through two others; rebuild and compare
    pts = [(0, 0, 1), (4, 0, 1), (1, 1, 1), (2, 9, 1)]
    before = build_arrangement(pts, canonical=False)
    after = build_arrangement([(0, 0, 1), (4, 0, 1), (1, -1, 1), (2, 9, 1)], canonical=False)
    gone = before.faces - after.faces
    new = after.faces - before.faces
    assert len(gone) == 1 and len(new) == 1
    (sigma,) = gone
    site = find_site(before, (0, 1, 2), sigma)
    assert apply_flip(before, site).faces == after.faces
    assert site.new_face in new


def test_site_not_present():
    rng = random.Random(4)
    arr = random_arrangement(rng, 5)
    non_triangle = next(f for f in arr.faces if f not in set(arr.triangles))
    with pytest.raises(SiteNotPresent):
        find_site(arr, (0, 1, 2), non_triangle)


def test_subdivided_triangle_is_not_a_site():
    # lines of points 0,1,2 bound a triangle in the 3-line arrangement; the
    # fourth line cuts it, so the sub-triangles need not be sites for (0, 1, 2)
    rng = random.Random(5)
    for _ in range(20):
        pts = random_points(rng, 4)
        arr = build_arrangement([(x, y, 1) for x, y in pts])
        for s in flip_sites(arr):
            assert s.role_faces() <= arr.faces | {s.new_face}
            assert len(arr.bounding_lines(s.face)) == 3


def test_site_roles_match_definition():
    face = (1, 1, -1, 1)
    s = FlipSite.at((0, 2, 3), face)
    assert s.edge[0] == normalize((-1, 1, -1, 1))
    assert s.vertex[0] == normalize((1, 1, 1, -1))
    assert s.new_face == normalize((-1, 1, 1, -1))
    assert len(s.role_faces()) == 8


def test_dump_json_round_trip():
    import json

    rng = random.Random(6)
    arr = random_arrangement(rng, 4)
    data = json.loads(arr.dumps())
    assert len(data["faces"]) == 7
    assert set(data["triangles"]) <= set(data["faces"])
