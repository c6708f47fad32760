"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 non-generic configuration or
motion, 3 relation failure, 4 results differ (``compare`` only).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .audit import laurent_audit
from .engine import InvariantResult, compute_invariant, first_difference
from .errors import (
    InvalidInput,
    MissingRole,
    NonGenericMotion,
    NotGeneric,
    RelationFailed,
    SiteNotPresent,
)
from .geometry import build_arrangement
from .motion import to_vectors
from .octagon import octagon_checks
from .scene import load_scene, rational

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_NONGENERIC = 2
EXIT_RELATION = 3
EXIT_DIFFERENT = 4

FAULT_ENV = "OCTAFLIP_FAULT_FLIP5"
SEED_ENV = "OCTAFLIP_SEED"


def dumps_result(result: InvariantResult) -> str:
    """Canonical Result JSON text (sorted keys, two-space indent, final newline)."""
    return json.dumps(result.to_json(), indent=2, sort_keys=True) + "\n"


def load_result(path: str | Path) -> InvariantResult:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read result {path}: {exc}") from None
    if not isinstance(data, dict):
        raise InvalidInput(f"{path}: result must be a JSON object")
    return InvariantResult.from_json(data)


def cmd_run(args) -> int:
    scene = load_scene(args.scene, args.backend)
    result = compute_invariant(scene)
    text = dumps_result(result)
    summary = f"script length: {result.script_length}\npermutation: {list(result.permutation)}"
    if scene.seed is not None:
        summary += f"\nseed: {scene.seed}"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(summary)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_compare(args) -> int:
    r1 = load_result(args.a)
    r2 = load_result(args.b)
    diff = first_difference(r1, r2)
    if diff is None:
        print("equal")
        return EXIT_OK
    print(f"differ: {diff}")
    return EXIT_DIFFERENT


def cmd_verify_octagon(args) -> int:
    corrupt = args.corrupt_flip5 or os.environ.get(FAULT_ENV) == "1"
    backends = ["classical", "tropical"] if args.backend == "both" else [args.backend]
    for backend in backends:
        print(f"[{backend}]")
        for check in octagon_checks(backend, corrupt):
            print(f"  {check.line()}")
            if not check.ok:
                raise RelationFailed(check.name, check.lhs, check.rhs)
        print(f"  octagon relation holds ({backend})")
    return EXIT_OK


def _seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(SEED_ENV)
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise InvalidInput(f"{SEED_ENV} must be an integer, got {env!r}") from None


def cmd_laurent_audit(args) -> int:
    report = laurent_audit(args.n, args.trials, args.len, _seed(args.seed))
    print(report.summary())
    for f in report.failures[:20]:
        print(f"  not Laurent: {f}")
    return EXIT_OK if report.passed else EXIT_RELATION


def _points_arg(text: str):
    pts = []
    for tok in text.split():
        x, sep, y = tok.partition(",")
        if not sep:
            raise InvalidInput(f"point {tok!r} is not of the form x,y")
        pts.append((rational(x), rational(y)))
    return pts


def cmd_geometry_stats(args) -> int:
    if args.points is not None:
        pts = _points_arg(args.points)
    elif args.scene is not None:
        pts = load_scene(args.scene).trajectory.at(0)
    else:
        raise InvalidInput("give a scene file or --points")
    arr = build_arrangement(to_vectors(pts))
    st = arr.stats()
    if args.json:
        print(json.dumps(st, sort_keys=True))
    else:
        print(f"n={st['n']} V={st['V']} E={st['E']} F={st['F']} triangles={st['triangles']}")
        print(f"Euler characteristic V-E+F = {st['V'] - st['E'] + st['F']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="octaflip", description="Braid invariants from Desargues flips of line arrangements."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="compute the invariant of a scene")
    p.add_argument("scene", help="scene JSON file")
    p.add_argument("--backend", choices=["classical", "tropical"], default=None)
    p.add_argument("--out", help="write the Result JSON here instead of stdout")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("compare", help="compare two Result JSON files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("verify-octagon", help="check the octagon relation symbolically")
    p.add_argument("--backend", choices=["both", "classical", "tropical"], default="both")
    p.add_argument("--corrupt-flip5", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_octagon)

    p = sub.add_parser("laurent-audit", help="check that random geometric scripts give Laurent labels")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--len", type=int, default=12)
    p.add_argument("--seed", type=int, default=None, help=f"defaults to ${SEED_ENV}, else 0")
    p.set_defaults(func=cmd_laurent_audit)

    p = sub.add_parser("geometry-stats", help="V/E/F and triangle count of an arrangement")
    p.add_argument("scene", nargs="?", help="scene JSON file (its starting points are used)")
    p.add_argument("--points", help='points as "x,y x,y ...", rationals allowed')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_geometry_stats)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NonGenericMotion as exc:
        where = ""
        if exc.triple is not None:
            where += f" triple={list(exc.triple)}"
        if exc.interval is not None:
            lo, hi = exc.interval
            where += f" interval=[{lo}, {hi}]"
        print(f"error: non-generic motion: {exc}{where}", file=sys.stderr)
        return EXIT_NONGENERIC
    except NotGeneric as exc:
        where = f" triple={list(exc.triple)}" if exc.triple is not None else ""
        print(f"error: non-generic configuration: {exc}{where}", file=sys.stderr)
        return EXIT_NONGENERIC
    except RelationFailed as exc:
        print(f"error: relation failed: {exc}", file=sys.stderr)
        return EXIT_RELATION
    except (SiteNotPresent, MissingRole) as exc:
        print(f"error: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_RELATION


if __name__ == "__main__":
    sys.exit(main())
