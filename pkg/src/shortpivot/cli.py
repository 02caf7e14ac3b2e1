"""Command-line entry point: ``shortpivot {gen,solve,decompose,game,verify}``.

Human summaries go to standard output; machine-readable files are written
only to the path given with ``--output``.

Exit codes: 0 success, 2 usage or parse error, 3 primal infeasible,
4 unbounded (dual infeasible), 5 verification failure, 6 internal defect,
7 I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import formats
from .algebra import format_rational
from .decompose import StepSign, decompose, replay
from .errors import FormatError, InstanceTooLarge, InternalInvariant, ShortPivotError
from .game import Direction, game_decompose, solve_game
from .model import generate_instance
from .oracle import HARD_CAP
from .simplex import Status, solve_canonical
from .verify import run_sweep, verify_instance, verify_trace

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INFEASIBLE = 3
EXIT_UNBOUNDED = 4
EXIT_VERIFY = 5
EXIT_DEFECT = 6
EXIT_IO = 7

STATUS_EXIT = {
    Status.PRIMAL_INFEASIBLE: EXIT_INFEASIBLE,
    Status.DUAL_INFEASIBLE: EXIT_UNBOUNDED,
}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _idx(indices) -> str:
    return "{" + ",".join(str(i + 1) for i in indices) + "}"


def _pivots(pivots) -> str:
    return " ".join(f"({i + 1},{j + 1})" for i, j in pivots) or "(none)"


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None:
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _single_input(args) -> str:
    if not args.input or len(args.input) != 1:
        raise CliError(EXIT_PARSE, "exactly one --input is required")
    return args.input[0]


def _load_lp(path: str):
    try:
        return formats.load_instance(_read(path))
    except FormatError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _solve_or_exit(lp):
    outcome = solve_canonical(lp)
    print(f"status: {outcome.status.value}")
    if outcome.status is not Status.OPTIMAL:
        raise CliError(STATUS_EXIT[outcome.status], f"no optimal pair: {outcome.status.value}")
    return outcome


def cmd_gen(args) -> int:
    if args.m is None or args.n is None or args.m < 1 or args.n < 1:
        raise CliError(EXIT_PARSE, "gen needs --m and --n, both at least 1")
    lp = generate_instance(args.m, args.n, args.seed)
    _write(args.output, formats.dump_instance(lp))
    print(f"generated {lp.m}x{lp.n} instance, seed {args.seed}")
    if args.output:
        print(f"wrote {args.output}")
    return EXIT_OK


def cmd_solve(args) -> int:
    lp = _load_lp(_single_input(args))
    outcome = _solve_or_exit(lp)
    cert = outcome.certificate
    print(f"objective: {format_rational(cert.objective)}")
    print(f"R+ = {_idx(cert.partition.rows)}  C+ = {_idx(cert.partition.cols)}  r = {cert.r}")
    if args.verbose:
        for line in outcome.pivot_log:
            print(line)
    _write(args.output, formats.dump_certificate(cert))
    return EXIT_OK


def cmd_decompose(args) -> int:
    lp = _load_lp(_single_input(args))
    outcome = _solve_or_exit(lp)
    trace = decompose(lp, outcome.certificate, StepSign(args.step_sign))
    if not replay(lp, trace.pivots).same_values(trace):
        raise CliError(EXIT_VERIFY, "replay does not reproduce the decomposition")
    print(f"r = {trace.r}  min(m,n) = {min(lp.m, lp.n)}")
    print(f"pivots: {_pivots(trace.pivots)}")
    for lev in trace.levels:
        tag = f"  [{lev.case_tag.value}, {lev.inner_iterations} inner]" if lev.case_tag else ""
        print(f"  k={lev.k}  R={_idx(lev.R)}  C={_idx(lev.C)}  objective={format_rational(lev.objective)}{tag}")
    _write(args.output, formats.dump_trace(trace))
    return EXIT_OK


def cmd_game(args) -> int:
    if args.direction is None:
        raise CliError(EXIT_PARSE, "game needs --direction {dec,inc}")
    path = _single_input(args)
    try:
        game = formats.load_game(_read(path))
    except FormatError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    cert = solve_game(game)
    trace = game_decompose(game, cert, Direction(args.direction))
    print(f"gamma = {format_rational(cert.gamma)}  r = {cert.r}")
    print(f"pivots: {_pivots(trace.pivots)}")
    print("gamma sequence: (" + ", ".join(format_rational(g) for g in trace.gammas) + ")")
    _write(args.output, formats.dump_game_trace(trace))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.cap > HARD_CAP:
        raise CliError(EXIT_PARSE, f"--cap {args.cap} refused: enumeration is limited to {HARD_CAP}")
    prefer = StepSign(args.step_sign)
    if args.input:
        if len(args.input) > 2:
            raise CliError(EXIT_PARSE, "verify takes an instance and optionally one trace")
        lp = _load_lp(args.input[0])
        if len(args.input) == 2:
            try:
                trace = formats.load_trace(_read(args.input[1]))
            except FormatError as exc:
                raise CliError(EXIT_PARSE, f"{args.input[1]}: {exc}") from exc
            failures = verify_trace(lp, trace)
        else:
            failures = verify_instance(lp, args.cap, prefer, instance_id=args.input[0]).failures
        for f in failures:
            print(f"FAIL {f}")
        print("verification " + ("failed" if failures else "passed"))
        return EXIT_VERIFY if failures else EXIT_OK

    summary = run_sweep(args.count, args.m or 4, args.n or 4, args.seed, args.cap, prefer)
    print(f"instances: {len(summary.results)}  passed: {summary.passed}  max r: {summary.max_r}")
    print("case tags: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.case_tags.items())))
    print("inner iterations: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.inner_iterations.items())))
    for res in summary.failed:
        print(f"FAIL {res.instance_id}: {'; '.join(res.failures)}")
    _write(args.output, json.dumps(summary.as_dict(), indent=2) + "\n")
    return EXIT_VERIFY if summary.failed else EXIT_OK


COMMANDS = {
    "gen": (cmd_gen, "write a random instance with both problems feasible"),
    "solve": (cmd_solve, "solve an instance and print its optimal partition"),
    "decompose": (cmd_decompose, "build and replay a short pivot sequence"),
    "game": (cmd_game, "solve a matrix game and build a monotone trace"),
    "verify": (cmd_verify, "run seeded cross-checks, or check a stored trace"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, help="rows (gen) or maximum rows (verify)")
    common.add_argument("--n", type=int, help="columns (gen) or maximum columns (verify)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--input", action="append", help="input file; verify accepts instance then trace")
    common.add_argument("--output", help="write the machine-readable result here")
    common.add_argument("--direction", choices=[d.value for d in Direction])
    common.add_argument("--step-sign", choices=[s.value for s in StepSign], default="pos")
    common.add_argument("--cap", type=int, default=4, help="enumeration size cap (at most 6)")
    common.add_argument("--count", type=int, default=100, help="instances in a verify sweep")
    common.add_argument("--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="shortpivot", description="Exact short pivot sequences for linear programs and matrix games.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=text)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command][0](args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except InstanceTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InternalInvariant as exc:
        print(f"internal defect: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEFECT
    except ShortPivotError as exc:
        print(f"internal defect: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DEFECT


if __name__ == "__main__":
    sys.exit(main())
