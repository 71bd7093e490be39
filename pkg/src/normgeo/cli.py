"""Command-line interface.

Subcommands: check (vector relations), opnorm (induced norm), attain
(attainment set), verify (randomized suites), reproduce (worked-example
catalog), dump (sphere samples / norm curves as CSV).

Exit codes: 0 success (and the relation holds), 1 the queried relation
fails (or a reproduction check fails), 2 a verification suite reported
failures, 64 usage error, 65 unreadable or invalid input, 70 internal
inconsistency detected.

JSON output is canonical: keys sorted, two-space indent, floats shortened
to 12 significant digits — byte-identical across repeated runs.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from .errors import (
    ConstructionFailed,
    DimensionMismatch,
    InternalInconsistency,
    ParseError,
    UndefinedInput,
    UnsupportedSpace,
)
from .operators import attainment_set, operator_from_dict, operator_norm
from .relations import (
    is_approx_birkhoff,
    is_approx_parallel,
    is_birkhoff,
    is_exposed_point,
    is_parallel,
    is_semi_rotund_point,
    is_strong_birkhoff,
)
from .spaces import norm_eval, space_from_dict, sphere_sample
from .suites import (
    check_idempotent_ranges,
    check_monotone_transfer,
    check_nilpotent_nonparallel,
    check_orthogonality_split,
    check_parallel_attainment,
    check_strict_convexity_parallelism,
    reproduce_catalog,
)
from .tolerances import ATTAIN_TOL, DEFAULT_SEED

_EXIT_RELATION_FAILS = 1
_EXIT_SUITE_FAILURES = 2
_EXIT_USAGE = 64
_EXIT_BAD_INPUT = 65
_EXIT_INTERNAL = 70

_SUITES = {
    "th2_3": check_parallel_attainment,
    "th2_8": check_strict_convexity_parallelism,
    "th2_9": check_nilpotent_nonparallel,
    "th2_11": check_idempotent_ranges,
    "th3_6": check_orthogonality_split,
    "transfer": check_monotone_transfer,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse flavor that reports usage problems via exit code 64."""

    def error(self, message):  # noqa: D102 - argparse hook
        raise _UsageError(message)


def _canon(obj):
    """JSON-ready copy with floats normalized to 12 significant digits."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, (float, np.floating)):
        v = float(obj)
        if math.isfinite(v):
            v = float(format(v, ".12g"))
            return 0.0 if v == 0.0 else v
        return v
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _canon(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [_canon(v) for v in obj]
    return obj


def _emit(obj) -> None:
    print(json.dumps(_canon(obj), sort_keys=True, indent=2))


def _fmt(v: float) -> str:
    v = float(v)
    if v == 0.0:
        v = 0.0
    return format(v, ".12g")


def _parse_vector(text: str) -> np.ndarray:
    parts = [p.strip() for p in text.split(",")]
    if not parts or any(p == "" for p in parts):
        raise ParseError(f"bad vector literal {text!r}")
    try:
        return np.array([float(p) for p in parts])
    except ValueError as exc:
        raise ParseError(f"bad vector literal {text!r}: {exc}") from exc


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("GEOM_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError as exc:
        raise ParseError(f"GEOM_SEED must be an integer, got {env!r}") from exc


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args) -> int:
    space = space_from_dict(_load_json(args.space))
    x = _parse_vector(args.x)
    rel = args.relation
    needs_y = rel in ("birkhoff", "strong", "parallel", "approx-orth", "approx-par")
    if needs_y and args.y is None:
        raise _UsageError(f"relation {rel} requires --y")
    if rel in ("approx-orth", "approx-par") and args.eps is None:
        raise _UsageError(f"relation {rel} requires --eps")
    y = _parse_vector(args.y) if args.y is not None else None
    if rel == "birkhoff":
        v = is_birkhoff(space, x, y)
    elif rel == "strong":
        v = is_strong_birkhoff(space, x, y)
    elif rel == "parallel":
        v = is_parallel(space, x, y)
    elif rel == "approx-orth":
        v = is_approx_birkhoff(space, x, y, args.eps)
    elif rel == "approx-par":
        v = is_approx_parallel(space, x, y, args.eps)
    elif rel == "semirotund":
        v = is_semi_rotund_point(space, x, search_budget=args.budget)
    else:
        v = is_exposed_point(space, x)
    _emit(v.to_dict())
    return 0 if v.holds else _EXIT_RELATION_FAILS


def _cmd_opnorm(args) -> int:
    T = operator_from_dict(_load_json(args.op))
    _emit(operator_norm(T).to_dict())
    return 0


def _cmd_attain(args) -> int:
    T = operator_from_dict(_load_json(args.op))
    att = attainment_set(T, tol=args.tol)
    _emit(att.to_dict())
    if args.csv is not None:
        header = "component," + ",".join(f"x{i}" for i in range(T.domain.dim))
        lines = [header]
        for ci, comp in enumerate(att.components):
            for p in np.asarray(comp):
                lines.append(f"{ci}," + ",".join(_fmt(c) for c in p))
        try:
            with open(args.csv, "w", encoding="utf-8") as fh:
                fh.write("\n".join(lines) + "\n")
        except OSError as exc:
            raise ParseError(f"cannot write {args.csv}: {exc}") from exc
    return 0


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args.seed)
    if args.suite == "all":
        reports = [fn(trials=args.trials, seed=seed) for fn in _SUITES.values()]
        _emit({"reports": [r.to_dict() for r in reports]})
        bad = any(r.failures for r in reports)
    else:
        report = _SUITES[args.suite](trials=args.trials, seed=seed)
        _emit(report.to_dict())
        bad = bool(report.failures)
    return _EXIT_SUITE_FAILURES if bad else 0


def _cmd_reproduce(args) -> int:
    result = reproduce_catalog(only=args.only)
    _emit(result)
    return 0 if result["ok"] else _EXIT_RELATION_FAILS


def _cmd_dump(args) -> int:
    space = space_from_dict(_load_json(args.space))
    if args.what == "sphere":
        pts = sphere_sample(space, args.resolution)
        print(",".join(f"x{i}" for i in range(space.dim)))
        for p in np.asarray(pts):
            print(",".join(_fmt(c) for c in p))
        return 0
    if args.x is None or args.y is None or args.lambda_range is None:
        raise _UsageError("dump curve requires --x, --y and --lambda-range")
    x = _parse_vector(args.x)
    y = _parse_vector(args.y)
    try:
        a_s, b_s, n_s = args.lambda_range.split(":")
        a, b, n = float(a_s), float(b_s), int(n_s)
    except ValueError as exc:
        raise ParseError(
            f"bad lambda range {args.lambda_range!r}, expected start:stop:steps"
        ) from exc
    if n < 2:
        raise UndefinedInput("lambda range needs at least two steps")
    print("lambda,value")
    for lam in np.linspace(a, b, n):
        print(f"{_fmt(lam)},{_fmt(norm_eval(space, x + lam * y))}")
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="normgeo",
        description="Geometric predicates of finite-dimensional normed spaces.",
        epilog=(
            "exit codes: 0 success/holds, 1 relation or reproduction fails, "
            "2 suite failures, 64 usage, 65 bad input, 70 internal error"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="evaluate a vector relation")
    c.add_argument("--space", required=True, help="path to a space JSON file")
    c.add_argument(
        "--relation",
        required=True,
        choices=[
            "birkhoff",
            "strong",
            "parallel",
            "approx-orth",
            "approx-par",
            "semirotund",
            "exposed",
        ],
    )
    c.add_argument("--x", required=True, help="comma-separated coordinates")
    c.add_argument("--y", help="comma-separated coordinates (second vector)")
    c.add_argument("--eps", type=float, help="approximation level in [0, 1)")
    c.add_argument(
        "--budget",
        type=int,
        default=10000,
        help="search budget for --relation semirotund (default 10000)",
    )
    c.set_defaults(fn=_cmd_check)

    o = sub.add_parser("opnorm", help="induced operator norm")
    o.add_argument("--op", required=True, help="path to an operator JSON file")
    o.set_defaults(fn=_cmd_opnorm)

    a = sub.add_parser("attain", help="norm-attainment set of an operator")
    a.add_argument("--op", required=True, help="path to an operator JSON file")
    a.add_argument(
        "--tol",
        type=float,
        default=ATTAIN_TOL,
        help=f"relative attainment tolerance (default {ATTAIN_TOL})",
    )
    a.add_argument("--csv", help="also write cluster points to this CSV file")
    a.set_defaults(fn=_cmd_attain)

    v = sub.add_parser("verify", help="run a randomized verification suite")
    v.add_argument(
        "--suite", required=True, choices=[*_SUITES.keys(), "all"]
    )
    v.add_argument("--trials", type=int, default=100)
    v.add_argument(
        "--seed",
        type=int,
        help="base seed (default: GEOM_SEED env var, then 2019)",
    )
    v.set_defaults(fn=_cmd_verify)

    r = sub.add_parser("reproduce", help="re-derive the worked examples")
    r.add_argument(
        "--only",
        choices=[c for c in "abcdefghij"],
        help="run a single reproduction check",
    )
    r.set_defaults(fn=_cmd_reproduce)

    d = sub.add_parser("dump", help="CSV dumps of sphere samples / norm curves")
    d.add_argument("what", choices=["sphere", "curve"])
    d.add_argument("--space", required=True, help="path to a space JSON file")
    d.add_argument(
        "--resolution", type=int, default=256, help="sphere sample resolution"
    )
    d.add_argument("--x", help="curve base point")
    d.add_argument("--y", help="curve direction")
    d.add_argument(
        "--lambda-range",
        help="start:stop:steps for the curve (use --lambda-range=-1:1:9 "
        "when start is negative)",
    )
    d.set_defaults(fn=_cmd_dump)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return _EXIT_USAGE
    except BrokenPipeError:
        # Downstream consumer (e.g. head) closed stdout; not our error.
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0
    except (ParseError, UndefinedInput, DimensionMismatch, UnsupportedSpace) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_BAD_INPUT
    except (InternalInconsistency, ConstructionFailed) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return _EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())
