"""Command-line front end: parse a net, verify weak consistency, locate the
first token death, synthesize and validate schedules, dump matrices.

Exit codes: 0 success / positive verdict, 10 negative verdict (not weakly
consistent, infeasible horizon, inconsistent trajectory), 11 asked for a
death bound on a weakly consistent net, 2 bad input.
"""

from __future__ import annotations

import os

# Thread cap must land in the environment before numpy initializes its
# BLAS pools, hence before the library imports below.
_pteg_threads = os.environ.get("PTEG_THREADS")
if _pteg_threads and _pteg_threads.isdigit() and int(_pteg_threads) > 0:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ.setdefault(_var, _pteg_threads)

import argparse
import json
import sys
from fractions import Fraction

from .death import IsWeaklyConsistent, first_death
from .periodic import build_periodic
from .pteg import (
    PTEGError,
    compile_matrices,
    parse_pteg,
    parse_trajectory,
    validate_trajectory,
)
from .trajectory import HorizonInfeasible, synthesize
from .tropical import NEG_INF, POS_INF, TropicalError
from .wc import verify_wc

EXIT_OK = 0
EXIT_NEGATIVE = 10
EXIT_WEAKLY_CONSISTENT = 11
EXIT_INPUT = 2


def _scalar_json(v):
    if v is POS_INF:
        return "inf"
    if v is NEG_INF:
        return "-inf"
    if v.denominator == 1:
        return int(v)
    return f"{v.numerator}/{v.denominator}"


def _matrix_json(m):
    return [[_scalar_json(v) for v in m.row(i)] for i in range(m.rows)]


def _emit(doc, output):
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_net(path):
    with open(path) as fh:
        return parse_pteg(fh.read())


def _cmd_check_wc(args) -> int:
    mats = compile_matrices(_load_net(args.net))
    verdict = verify_wc(mats)
    if verdict.weakly_consistent:
        doc = {"weakly_consistent": True, "certificate": None, "horizon_bound": None}
        _emit(doc, args.output)
        return EXIT_OK
    c = verdict.certificate
    doc = {
        "weakly_consistent": False,
        "certificate": {
            "i": c.i,
            "j": c.j,
            "t": c.pair_i.t,
            "w": _scalar_json(c.pair_i.w),
            "t_prime": c.pair_j.t,
            "w_prime": _scalar_json(c.pair_j.w),
            "r": _scalar_json(c.r),
            "y": c.y,
            "y_prime": c.y2,
            "circuit_weight": _scalar_json(c.weight),
        },
        "horizon_bound": c.k_hat,
    }
    _emit(doc, args.output)
    return EXIT_NEGATIVE


def _cmd_first_death(args) -> int:
    mats = compile_matrices(_load_net(args.net))
    try:
        report = first_death(mats, bound=args.bound)
    except IsWeaklyConsistent as exc:
        _emit({"error": str(exc)}, args.output)
        return EXIT_WEAKLY_CONSISTENT
    doc = {
        "k_star": report.k_star,
        "max_firings": report.max_firings,
        "horizon_bound": report.horizon_bound,
    }
    _emit(doc, args.output)
    return EXIT_OK


def _cmd_synthesize(args) -> int:
    mats = compile_matrices(_load_net(args.net))
    seed = None
    if args.seed_vector:
        with open(args.seed_vector) as fh:
            raw = json.load(fh, parse_float=Fraction)
        if not isinstance(raw, list):
            raise PTEGError("seed vector file must hold a JSON list")
        seed = raw
    try:
        traj = synthesize(mats, args.K, seed)
    except HorizonInfeasible as exc:
        _emit({"error": str(exc)}, args.output)
        return EXIT_NEGATIVE
    doc = {"daters": [[_scalar_json(v) for v in row] for row in traj.daters]}
    _emit(doc, args.output)
    return EXIT_OK


def _cmd_validate(args) -> int:
    mats = compile_matrices(_load_net(args.net))
    with open(args.trajectory) as fh:
        traj = parse_trajectory(fh.read(), mats.n)
    result = validate_trajectory(mats, traj)
    doc = {
        "consistent": result.consistent,
        "k": result.k,
        "kind": result.kind,
        "row": result.row,
    }
    _emit(doc, args.output)
    return EXIT_OK if result.consistent else EXIT_NEGATIVE


def _cmd_matrices(args) -> int:
    mats = compile_matrices(_load_net(args.net))
    sys_ = build_periodic(mats)
    doc = {
        "A0": _matrix_json(mats.a0),
        "A1": _matrix_json(mats.a1),
        "B0": _matrix_json(mats.b0),
        "B1": _matrix_json(mats.b1),
        "P": _matrix_json(sys_.p),
        "I": _matrix_json(sys_.i),
        "C": _matrix_json(sys_.c),
    }
    _emit(doc, args.output)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ptegkit",
        description="Exact weak-consistency and token-death analysis of "
        "P-time event graphs.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("net", help="P-TEG JSON document")
        p.add_argument("--output", help="write the JSON result to a file")
        p.set_defaults(func=func)
        return p

    add("check-wc", _cmd_check_wc, "decide weak consistency")
    p = add("first-death", _cmd_first_death, "find the first infeasible horizon")
    p.add_argument("--bound", type=int, help="override the search bound")
    p = add("synthesize", _cmd_synthesize, "build a consistent finite schedule")
    p.add_argument("-K", type=int, required=True, help="horizon (number of extra firings)")
    p.add_argument("--seed-vector", help="JSON file with the seed vector u")
    p = add("validate", _cmd_validate, "check a trajectory against the net")
    p.add_argument("trajectory", help="trajectory JSON document")
    add("matrices", _cmd_matrices, "dump characteristic and periodic matrices")
    return top


def main(argv=None) -> int:
    if _pteg_threads is not None and not (
        _pteg_threads.isdigit() and int(_pteg_threads) >= 0
    ):
        print(f"PTEG_THREADS must be a non-negative integer, got {_pteg_threads!r}",
              file=sys.stderr)
        return EXIT_INPUT
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PTEGError, TropicalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
