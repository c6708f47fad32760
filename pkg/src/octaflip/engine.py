"""Label propagation through flip scripts and the braid invariant.

Labels live on the faces of the arrangement (the vertices of the dual
quadrangulation).  Inverting a triangle replaces the label ``x`` of the
collapsing face by ``(E_i W_i + E_j W_j + E_k W_k) / x`` in the chosen
semifield, where ``(E_m, W_m)`` are the opposite pairs of the hexagon
around the triangle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import (
    SemifieldElement,
    default_names,
    generator,
    parse,
    serialize,
    sf_equals,
)
from .errors import InvalidInput, MissingRole, NotClosed
from .geometry import (
    DualArrangement,
    FlipSite,
    SignVector,
    apply_flip,
    find_site,
    normalize,
    parse_sign_string,
    sign_string,
)
from .motion import FlipScript, Trajectory, arrangement_at, compile_flip_script, realized_permutation


@dataclass(frozen=True)
class Labeling:
    """Map from face sign vectors to semifield elements of one backend."""

    labels: Mapping[SignVector, SemifieldElement]
    backend: str
    nvars: int

    def __getitem__(self, face: SignVector) -> SemifieldElement:
        return self.labels[face]

    def __contains__(self, face) -> bool:
        return face in self.labels

    def __len__(self) -> int:
        return len(self.labels)

    def keys(self):
        return self.labels.keys()

    def sorted_items(self):
        return sorted(self.labels.items(), key=lambda kv: sign_string(kv[0]))

    def equals(self, other: Labeling) -> bool:
        """Same key set and ``sf_equals`` on every face."""
        if set(self.labels) != set(other.labels):
            return False
        return all(sf_equals(v, other.labels[k]) for k, v in self.labels.items())

    def to_json(self, names: Sequence[str] | None = None) -> dict[str, str]:
        return {sign_string(k): serialize(v, names) for k, v in self.sorted_items()}


def initial_labeling(arr: DualArrangement, backend: str = "classical") -> Labeling:
    """Face number ``r`` in sign-string order gets generator ``r``."""
    faces = arr.sorted_faces()
    g = len(faces)
    return Labeling({f: generator(backend, r, g) for r, f in enumerate(faces)}, backend, g)


def desargues(x, pairs):
    """``(a*d + b*e + c*f) / x`` for ``pairs = [(a, d), (b, e), (c, f)]``."""
    (a, d), (b, e), (c, f) = pairs
    return (a.otimes(d).oplus(b.otimes(e)).oplus(c.otimes(f))).oslash(x)


def flip_value(x, pairs):
    """The flipped label, with one exact-division simplification attempt."""
    return desargues(x, pairs).simplified()


def flip_label(lab: Labeling, site: FlipSite) -> Labeling:
    """Replace the label on ``site.face`` by the flipped value on ``site.new_face``."""
    needed = {site.face, *site.edge.values(), *site.vertex.values()}
    missing = [f for f in needed if f not in lab.labels]
    if missing:
        raise MissingRole(f"labels missing for faces {[sign_string(f) for f in missing]}")
    x = lab.labels[site.face]
    pairs = [(lab.labels[a], lab.labels[b]) for a, b in site.pairs()]
    new = flip_value(x, pairs)
    out = dict(lab.labels)
    del out[site.face]
    out[site.new_face] = new
    return Labeling(out, lab.backend, lab.nvars)


def propagate_with_arrangement(
    lab: Labeling, script: FlipScript | Sequence[FlipSite], arr: DualArrangement
) -> tuple[Labeling, DualArrangement]:
    for step in script:
        site = step if isinstance(step, FlipSite) else step.site
        site = find_site(arr, site.triple, site.face)
        lab = flip_label(lab, site)
        arr = apply_flip(arr, site)
    return lab, arr


def propagate(lab: Labeling, script: FlipScript | Sequence[FlipSite], arr: DualArrangement) -> Labeling:
    """Left fold of :func:`flip_label` over the script, advancing the arrangement."""
    return propagate_with_arrangement(lab, script, arr)[0]


def rekey(lab: Labeling, perm: Sequence[int]) -> Labeling:
    """Re-express strand-indexed sign vectors over the starting line order."""
    out = {}
    for face, val in lab.labels.items():
        sv = [0] * len(face)
        for j, s in enumerate(face):
            sv[perm[j]] = s
        out[normalize(sv)] = val
    return Labeling(out, lab.backend, lab.nvars)


@dataclass(frozen=True)
class Scene:
    trajectory: Trajectory
    backend: str = "classical"
    initial_labels: Mapping[str, str] | None = None
    seed: int | None = None


@dataclass(frozen=True)
class InvariantResult:
    labels: Labeling
    permutation: tuple[int, ...]
    script_length: int
    backend: str

    def to_json(self) -> dict:
        return {
            "permutation": list(self.permutation),
            "labels": self.labels.to_json(),
            "script_length": self.script_length,
            "backend": self.backend,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> InvariantResult:
        try:
            backend = data["backend"]
            raw = data["labels"]
            perm = tuple(int(x) for x in data["permutation"])
            length = int(data["script_length"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed result: {exc}") from exc
        if backend not in ("classical", "tropical"):
            raise InvalidInput(f"unknown backend {backend!r}")
        g = len(raw)
        labels = {}
        for key, text in raw.items():
            try:
                labels[parse_sign_string(key)] = parse(text, backend, g)
            except ValueError as exc:
                raise InvalidInput(f"bad label for {key}: {exc}") from exc
        return cls(Labeling(labels, backend, g), perm, length, backend)


def starting_labeling(arr: DualArrangement, scene: Scene) -> Labeling:
    lab = initial_labeling(arr, scene.backend)
    if not scene.initial_labels:
        return lab
    names = default_names(lab.nvars)
    out = dict(lab.labels)
    for key, text in scene.initial_labels.items():
        face = normalize(parse_sign_string(key))
        if face not in out:
            raise InvalidInput(f"{key} is not a face of the starting arrangement")
        out[face] = parse(text, scene.backend, names=names)
    return Labeling(out, lab.backend, lab.nvars)


def compute_invariant(scene: Scene | Trajectory, backend: str | None = None) -> InvariantResult:
    """Run a closed motion and return the induced relabeling of the starting graph."""
    if isinstance(scene, Trajectory):
        scene = Scene(scene, backend or "classical")
    elif backend is not None:
        scene = Scene(scene.trajectory, backend, scene.initial_labels, scene.seed)
    traj = scene.trajectory
    try:
        perm = realized_permutation(traj)
    except KeyError:
        raise NotClosed("the motion does not return the points to the starting set") from None
    script = compile_flip_script(traj)
    arr0 = arrangement_at(traj, 0)
    lab0 = starting_labeling(arr0, scene)
    lab, arr1 = propagate_with_arrangement(lab0, script, arr0)
    final = rekey(lab, perm)
    if set(final.labels) != set(arr0.faces):
        raise AssertionError("re-keyed faces differ from the starting faces")
    return InvariantResult(final, tuple(perm), len(script), scene.backend)


def first_difference(r1: InvariantResult, r2: InvariantResult) -> str | None:
    """Human-readable description of the first disagreement, or ``None``."""
    if r1.backend != r2.backend or set(r1.labels.keys()) != set(r2.labels.keys()):
        raise InvalidInput("results have different shapes (backend or face set)")
    if r1.permutation != r2.permutation:
        return f"permutation {list(r1.permutation)} != {list(r2.permutation)}"
    for face, val in r1.labels.sorted_items():
        other = r2.labels[face]
        if not sf_equals(val, other):
            return f"face {sign_string(face)}: {serialize(val)} != {serialize(other)}"
    return None


def compare_invariants(r1: InvariantResult, r2: InvariantResult) -> bool:
    """Equal permutations and ``sf_equals`` labels on every face."""
    return first_difference(r1, r2) is None
