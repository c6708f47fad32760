"""Regenerate the canned scene files under ``scenes/``.

Run from the repository root: ``python3 tools/make_scenes.py``.  The golden
results in ``tests/golden/`` are produced from these scenes by
``octaflip run``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from octaflip.motion import braid_word_to_trajectory, compile_flip_script, concatenate, excursion, retime
from octaflip.scene import rational_text, trajectory_to_dict

BASE = [(0, 0), (5, 7), (7, 2), (12, 6)]
OUT = Path(__file__).resolve().parent.parent / "scenes"


def base_points() -> list[list[str]]:
    return [[rational_text(Fraction(x)), rational_text(Fraction(y))] for x, y in BASE]


def write(name: str, data: dict) -> None:
    (OUT / f"{name}.json").write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def main() -> None:
    OUT.mkdir(exist_ok=True)
    write("trivial-n4", {"points": base_points()})
    write("nontrivial-loop-n4", {"points": base_points(), "word": "s2 s2", "arc_segments": 8})
    write("braid-s1s2s1-n4", {"points": base_points(), "word": "s1 s2 s1"})
    write("braid-s2s1s2-n4", {"points": base_points(), "word": "s2 s1 s2"})
    write("braid-s1s3-n4", {"points": base_points(), "word": "s1 s3"})
    write("braid-s3s1-n4", {"points": base_points(), "word": "s3 s1"})

    # two explicit realizations of the pure braid s2 s2
    plain = braid_word_to_trajectory("s2 s2", BASE, 8)
    write("loop-a-n4", trajectory_to_dict(plain))
    # point 0 dips across the line through points 1 and 2 and comes back,
    # then the same loop runs on a distorted clock
    wiggle = excursion(BASE, 0, (10, -3))
    assert len(compile_flip_script(wiggle)) >= 2
    slow = retime(plain, [(0, 0), (Fraction(1, 4), Fraction(1, 2)), (Fraction(3, 4), Fraction(2, 3)), (1, 1)])
    write("loop-b-n4", trajectory_to_dict(concatenate(wiggle, slow, Fraction(1, 5))))


if __name__ == "__main__":
    main()
