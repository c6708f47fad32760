"""Scene files: points plus a motion, given explicitly or as a braid word.

All numbers are exact rational strings such as ``"3"``, ``"-1/2"``::

    {"points": [["0", "0"], ["5", "7"], ...],
     "trajectories": [{"times": ["0", "1"], "positions": [["0", "0"], ["0", "0"]]}, ...],
     "backend": "classical", "seed": 7}

or, with a braid word acting on ``points``::

    {"points": [...], "word": "s1 s2^-1", "arc_segments": 8}

Without ``trajectories`` or ``word`` the points stay put.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

import jsonschema

from .engine import Scene
from .errors import InvalidInput
from .motion import Trajectory, braid_word_to_trajectory

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")

_NUM = {"type": "string"}
_PAIR = {"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2}

SCENE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "properties": {
        "points": {"type": "array", "items": _PAIR, "minItems": 1},
        "trajectories": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "times": {"type": "array", "items": _NUM, "minItems": 2},
                    "positions": {"type": "array", "items": _PAIR, "minItems": 2},
                },
                "required": ["times", "positions"],
                "additionalProperties": False,
            },
        },
        "word": {"type": "string"},
        "arc_segments": {"type": "integer", "minimum": 2},
        "backend": {"enum": ["classical", "tropical"]},
        "initial_labels": {"type": "object", "additionalProperties": {"type": "string"}},
        "seed": {"type": "integer"},
    },
    "required": ["points"],
    "not": {"required": ["trajectories", "word"]},
    "additionalProperties": False,
}


def rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` exactly; anything else is invalid input."""
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise InvalidInput(f"not an exact rational: {text!r}")
    num, _, den = text.strip().partition("/")
    if den and int(den) == 0:
        raise InvalidInput(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def rational_text(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _pair(p) -> tuple[Fraction, Fraction]:
    return (rational(p[0]), rational(p[1]))


def scene_from_dict(data: Mapping, backend: str | None = None) -> Scene:
    """Validate and build a :class:`Scene`; ``backend`` overrides the file."""
    try:
        jsonschema.validate(data, SCENE_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "scene"
        raise InvalidInput(f"{where}: {exc.message}") from None
    points = [_pair(p) for p in data["points"]]
    if "trajectories" in data:
        trajs = data["trajectories"]
        if len(trajs) != len(points):
            raise InvalidInput(f"{len(points)} points but {len(trajs)} trajectories")
        times, positions = [], []
        for j, tr in enumerate(trajs):
            ts = [rational(t) for t in tr["times"]]
            ps = [_pair(p) for p in tr["positions"]]
            if ps[0] != points[j]:
                raise InvalidInput(f"trajectory {j} does not start at point {j}")
            times.append(ts)
            positions.append(ps)
        traj = Trajectory.from_lists(times, positions)
    elif "word" in data:
        traj = braid_word_to_trajectory(data["word"], points, data.get("arc_segments", 8))
    else:
        traj = Trajectory.constant(points)
    return Scene(
        traj,
        backend or data.get("backend", "classical"),
        dict(data["initial_labels"]) if "initial_labels" in data else None,
        data.get("seed"),
    )


def load_scene(path: str | Path, backend: str | None = None) -> Scene:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read scene {path}: {exc}") from None
    return scene_from_dict(data, backend)


def trajectory_to_dict(traj: Trajectory) -> dict:
    """Explicit scene dictionary for a trajectory (start points included)."""
    return {
        "points": [[rational_text(x), rational_text(y)] for x, y in traj.at(0)],
        "trajectories": [
            {
                "times": [rational_text(t) for t in p.times],
                "positions": [[rational_text(x), rational_text(y)] for x, y in p.positions],
            }
            for p in traj.paths
        ],
    }
