from __future__ import annotations

import json
import random
from fractions import Fraction
from pathlib import Path

import pytest

from octaflip.algebra import FieldElement, generator, parse, serialize, sf_equals, sf_evaluate, unit
from octaflip.audit import laurent_audit
from octaflip.engine import (
    InvariantResult,
    Labeling,
    Scene,
    compare_invariants,
    compute_invariant,
    first_difference,
    flip_label,
    initial_labeling,
    propagate,
    rekey,
)
from octaflip.errors import InvalidInput, MissingRole, NotClosed, RelationFailed
from octaflip.geometry import build_arrangement, flip_sites, sign_string
from octaflip.motion import Trajectory, braid_word_to_trajectory, compile_flip_script, concatenate
from octaflip.octagon import octagon_checks, run_flips, verify_octagon
from octaflip.scene import load_scene

from _support import commutation_case, fuzz_case, involution_case, random_arrangement

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"
SCENES = ROOT / "scenes"
BACKENDS = ["classical", "tropical"]
TRI = [(0, 0, 1), (1, 0, 1), (0, 1, 1)]


def test_initial_labeling_counts():
    arr = build_arrangement(TRI)
    lab = initial_labeling(arr)
    assert lab.nvars == 4 and len(lab) == 4
    assert [serialize(v) for _, v in lab.sorted_items()] == ["g0", "g1", "g2", "g3"]
    assert len(initial_labeling(random_arrangement(random.Random(1), 4))) == 7


def test_tropical_initial_labels_are_unit_vectors():
    lab = initial_labeling(build_arrangement(TRI), "tropical")
    for r, (_, v) in enumerate(lab.sorted_items()):
        assert v.num == ((0,) * r + (1,) + (0,) * (3 - r),)
        assert v.den == ((0, 0, 0, 0),)


@pytest.mark.parametrize("backend, expected", [("classical", 3), ("tropical", 0)])
def test_flip_of_units(backend, expected):
    arr = random_arrangement(random.Random(2), 4)
    one = unit(backend, 7)
    lab = Labeling({f: one for f in arr.faces}, backend, 7)
    site = flip_sites(arr)[0]
    out = flip_label(lab, site)
    new = out[site.new_face]
    assert sf_evaluate(new, (Fraction(5, 7),) * 7) == expected
    if backend == "classical":
        assert serialize(new) == "3"
    else:
        assert sf_equals(new, one)
    assert site.face not in out or site.face == site.new_face


def test_three_line_flip_squares_neighbours():
    arr = build_arrangement(TRI)
    lab = initial_labeling(arr)
    names = {f: serialize(v) for f, v in lab.labels.items()}
    for site in flip_sites(arr):
        out = flip_label(lab, site)
        others = sorted((names[f] for f in arr.faces if f != site.face), key=lambda s: int(s[1:]))
        expected = parse(f"({' + '.join(o + '^2' for o in others)})/({names[site.face]})", "classical", 4)
        assert sf_equals(out[site.new_face], expected)


def test_missing_role():
    arr = random_arrangement(random.Random(3), 4)
    lab = initial_labeling(arr)
    site = flip_sites(arr)[0]
    partial = Labeling({f: v for f, v in lab.labels.items() if f != site.edge[site.triple[0]]}, "classical", 7)
    with pytest.raises(MissingRole):
        flip_label(partial, site)


@pytest.mark.parametrize("backend", BACKENDS)
def test_empty_script(backend):
    arr = random_arrangement(random.Random(4), 5)
    lab = initial_labeling(arr, backend)
    assert propagate(lab, [], arr).equals(lab)


@pytest.mark.parametrize("backend", BACKENDS)
def test_involution_sample(backend):
    rng = random.Random(5)
    assert all(involution_case(rng, backend) for _ in range(40))


@pytest.mark.parametrize("backend", BACKENDS)
def test_commutation_sample(backend):
    rng = random.Random(6)
    results = [commutation_case(rng, backend) for _ in range(15)]
    assert all(r is not False for r in results)
    assert sum(r is True for r in results) >= 10


@pytest.mark.parametrize("backend", BACKENDS)
def test_evaluation_fuzz_sample(backend):
    rng = random.Random(7)
    results = [fuzz_case(rng, backend) for _ in range(40)]
    assert all(r is not False for r in results)
    assert sum(r is None for r in results) <= 4


def test_rekey_moves_signs_to_starting_lines():
    lab = Labeling({(1, -1, 1): generator("classical", 0, 1)}, "classical", 1)
    out = rekey(lab, [2, 0, 1])
    # strand j ends on starting line perm[j]
    assert list(out.keys()) == [(1, -1, -1)]


# --- invariants -----------------------------------------------------------

BASE = [(0, 0), (5, 7), (7, 2), (12, 6)]


@pytest.mark.parametrize("backend", BACKENDS)
def test_constant_trajectory_is_identity(backend):
    res = compute_invariant(Trajectory.constant(BASE), backend)
    assert res.permutation == (0, 1, 2, 3) and res.script_length == 0
    assert res.labels.equals(initial_labeling(build_arrangement([(x, y, 1) for x, y in BASE], canonical=False), backend))


@pytest.mark.parametrize("backend", BACKENDS)
def test_mirrored_loop_is_identity(backend):
    traj = Trajectory.from_lists(
        [[0, 1]] * 3 + [[0, 1]],
        [[(0, 0), (0, 0)], [(3, 0), (3, 0)], [(0, 3), (0, 3)], [(2, 2), (1, -1)]],
    )
    loop = concatenate(traj, traj.reversed())
    res = compute_invariant(loop, backend)
    assert res.script_length == 2 * len(compile_flip_script(traj)) > 0
    arr0 = build_arrangement([(0, 0, 1), (3, 0, 1), (0, 3, 1), (2, 2, 1)], canonical=False)
    assert res.labels.equals(initial_labeling(arr0, backend))


def test_not_closed():
    traj = Trajectory.from_lists([[0, 1]] * 3, [[(0, 0), (0, 0)], [(3, 0), (3, 0)], [(0, 3), (1, 3)]])
    with pytest.raises(NotClosed):
        compute_invariant(traj)


@pytest.mark.parametrize("backend", BACKENDS)
@pytest.mark.parametrize("name", ["trivial-n4", "nontrivial-loop-n4", "loop-a-n4", "loop-b-n4"])
def test_golden_files(name, backend):
    res = compute_invariant(load_scene(SCENES / f"{name}.json", backend))
    golden = json.loads((GOLDEN / f"{name}.{backend}.json").read_text())
    assert res.to_json() == golden
    assert compare_invariants(res, InvariantResult.from_json(golden))


def test_nontrivial_loop_moves_some_label():
    res = compute_invariant(load_scene(SCENES / "nontrivial-loop-n4.json"))
    assert any(serialize(v) != f"g{r}" for r, (_, v) in enumerate(res.labels.sorted_items()))


@pytest.mark.parametrize("backend", BACKENDS)
def test_braid_relations(backend):
    def inv(name):
        return compute_invariant(load_scene(SCENES / f"{name}.json", backend))

    assert compare_invariants(inv("braid-s1s2s1-n4"), inv("braid-s2s1s2-n4"))
    assert compare_invariants(inv("braid-s1s3-n4"), inv("braid-s3s1-n4"))
    assert not compare_invariants(inv("trivial-n4"), inv("nontrivial-loop-n4"))


def test_compare_examples():
    res = compute_invariant(load_scene(SCENES / "nontrivial-loop-n4.json"))
    assert compare_invariants(res, res)
    # an unreduced common factor does not matter
    face, val = res.labels.sorted_items()[0]
    g0 = generator("classical", 0, res.labels.nvars)
    padded = FieldElement(val.num * g0.num, val.den * g0.num)
    other = InvariantResult(
        Labeling({**res.labels.labels, face: padded}, "classical", res.labels.nvars), res.permutation, 8, "classical"
    )
    assert compare_invariants(res, other)
    changed = InvariantResult(
        Labeling({**res.labels.labels, face: g0}, "classical", res.labels.nvars), res.permutation, 8, "classical"
    )
    if not sf_equals(val, g0):
        assert first_difference(res, changed).startswith(f"face {sign_string(face)}")
    trop = compute_invariant(load_scene(SCENES / "nontrivial-loop-n4.json", "tropical"))
    with pytest.raises(InvalidInput):
        compare_invariants(res, trop)


def test_result_json_round_trip():
    res = compute_invariant(load_scene(SCENES / "loop-b-n4.json"))
    again = InvariantResult.from_json(json.loads(json.dumps(res.to_json())))
    assert again.to_json() == res.to_json()
    with pytest.raises(InvalidInput):
        InvariantResult.from_json({"labels": {}})


def test_scene_initial_labels():
    scene = load_scene(SCENES / "trivial-n4.json")
    face = sign_string(compute_invariant(scene).labels.sorted_items()[0][0])
    custom = Scene(scene.trajectory, "classical", {face: "g1 + g2"})
    res = compute_invariant(custom)
    assert serialize(res.labels.sorted_items()[0][1]) == "g1 + g2"
    with pytest.raises(InvalidInput):
        compute_invariant(Scene(scene.trajectory, "classical", {"+" * 4 + "-": "g1"}))


# --- octagon and audit ----------------------------------------------------


@pytest.mark.parametrize("backend", BACKENDS)
def test_octagon(backend):
    checks = verify_octagon(backend)
    names = [c.name for c in checks]
    assert {"q = i", "r = j", "s = k"} <= set(names)
    assert all(c.ok for c in checks)


def test_octagon_closed_forms_classical():
    vals = run_flips("classical")
    names = list("abcdefghijk")
    assert serialize(vals["q"], names) == "i"
    assert serialize(vals["r"], names) == "j"
    assert serialize(vals["s"], names) == "k"
    assert serialize(vals["l"], names) == "(c*h + b*k + a*j)/(i)" or sf_equals(
        vals["l"], parse("(a*j + b*k + c*h)/(i)", "classical", names=names)
    )


@pytest.mark.parametrize("backend", BACKENDS)
def test_octagon_negative_control(backend):
    checks = octagon_checks(backend, corrupt=True)
    first = next(c for c in checks if not c.ok)
    assert first.name == "q = i"
    with pytest.raises(RelationFailed):
        verify_octagon(backend, corrupt=True)


def test_audit_small():
    rep = laurent_audit(4, 5, 12, seed=1)
    assert rep.passed and rep.labels_checked == 35
    zero = laurent_audit(4, 3, 0, seed=1)
    assert zero.passed and zero.flips == 0
    with pytest.raises(InvalidInput):
        laurent_audit(2, 1, 1, seed=0)


def test_single_flip_has_generator_denominator():
    rep = laurent_audit(3, 4, 1, seed=2)
    assert rep.passed and rep.flips <= 4
