"""Empirical check that geometric flip scripts produce Laurent polynomials.

Each trial draws a random generic configuration with small integer
coordinates and a random piecewise-linear wiggle of every point, compiles
the motion, keeps the first ``script_length`` flips and propagates
classical labels.  A label passes when its denominator divides its
numerator exactly up to a monomial.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import laurent_exact_divide
from .engine import initial_labeling, propagate
from .errors import InvalidInput, NonGenericMotion, NotGeneric
from .geometry import find_degeneracy, sign_string
from .motion import Trajectory, arrangement_at, compile_flip_script, to_vectors

COORD = 12
SEGMENTS = 3
MAX_REDRAWS = 1000


@dataclass
class AuditReport:
    n: int
    trials: int
    script_length: int
    seed: int
    labels_checked: int = 0
    laurent: int = 0
    flips: int = 0
    redraws: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.laurent, self.labels_checked) if self.labels_checked else Fraction(1)

    @property
    def passed(self) -> bool:
        return self.laurent == self.labels_checked

    def summary(self) -> str:
        pct = float(self.ratio) * 100
        return (
            f"laurent-audit n={self.n} trials={self.trials} len<={self.script_length} seed={self.seed}: "
            f"{self.laurent}/{self.labels_checked} labels Laurent ({pct:.2f}%), "
            f"{self.flips} flips, {self.redraws} non-generic draws redrawn"
        )


def _random_point(rng: random.Random) -> tuple[Fraction, Fraction]:
    return (Fraction(rng.randint(-COORD, COORD)), Fraction(rng.randint(-COORD, COORD)))


def random_configuration(n: int, rng: random.Random) -> list[tuple[Fraction, Fraction]]:
    while True:
        pts = [_random_point(rng) for _ in range(n)]
        if find_degeneracy(to_vectors(pts)) is None:
            return pts


def random_motion(n: int, rng: random.Random, segments: int = SEGMENTS) -> Trajectory:
    """Random generic configuration moved through random waypoints."""
    start = random_configuration(n, rng)
    times = [Fraction(s, segments) for s in range(segments + 1)]
    positions = [[p] for p in start]
    for _ in range(segments):
        snap = random_configuration(n, rng)
        for j in range(n):
            positions[j].append(snap[j])
    return Trajectory.from_lists([times] * n, positions)


def random_script(n: int, rng: random.Random):
    """Draw motions until one compiles; returns (trajectory, script, redraws)."""
    for redraws in range(MAX_REDRAWS):
        traj = random_motion(n, rng)
        try:
            return traj, compile_flip_script(traj), redraws
        except (NonGenericMotion, NotGeneric):
            continue
    raise RuntimeError("no generic motion found")


def laurent_audit(n: int, trials: int, script_length: int, seed: int) -> AuditReport:
    if n < 3:
        raise InvalidInput("the audit needs n >= 3 (no triples, hence no flips)")
    if trials < 0 or script_length < 0:
        raise InvalidInput("trials and script length must be non-negative")
    report = AuditReport(n, trials, script_length, seed)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        traj, script, redraws = random_script(n, rng)
        report.redraws += redraws
        script = script.truncated(script_length)
        report.flips += len(script)
        arr = arrangement_at(traj, 0)
        lab = propagate(initial_labeling(arr, "classical"), script, arr)
        for face, val in lab.sorted_items():
            report.labels_checked += 1
            if laurent_exact_divide(val.num, val.den) is not None:
                report.laurent += 1
            else:
                report.failures.append(f"trial {trial} face {sign_string(face)}")
    return report
