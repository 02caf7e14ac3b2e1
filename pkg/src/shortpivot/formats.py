"""JSON and delimited-text formats for instances, traces and reports.

Rationals are written as ``"p/q"`` strings and every index is 1-based.
Writers emit ``json.dumps(..., indent=2)`` plus a newline, so a file read
and written again is byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import re
from typing import Any

from .algebra import Matrix, format_rational, to_rational
from .decompose import CaseTag, DecompositionTrace, TraceLevel
from .errors import FormatError, ShortPivotError
from .game import Direction, GameCertificate, GameLevel, GameTrace, MatrixGame
from .model import CanonicalLP, PartitionCertificate
from .oracle import EnumerationReport

INSTANCE = "shortpivot.instance"
CERTIFICATE = "shortpivot.certificate"
TRACE = "shortpivot.trace"
GAME_CERTIFICATE = "shortpivot.game_certificate"
GAME_TRACE = "shortpivot.game_trace"
ENUMERATION = "shortpivot.enumeration"


def _dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _loads(text: str, kind: str | None = None) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise FormatError("top-level JSON value must be an object")
    if kind is not None and obj.get("format", kind) != kind:
        raise FormatError(f"expected format {kind!r}, got {obj.get('format')!r}")
    return obj


def _q(values) -> list[str]:
    return [format_rational(v) for v in values]


def _rq(values, what: str) -> tuple:
    if not isinstance(values, list):
        raise FormatError(f"{what} must be a list")
    return tuple(to_rational(v) for v in values)


def _one_based(indices) -> list[int]:
    return [i + 1 for i in indices]


def _zero_based(indices, bound: int, what: str) -> tuple:
    if not isinstance(indices, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in indices):
        raise FormatError(f"{what} must be a list of integers")
    if any(not 1 <= i <= bound for i in indices):
        raise FormatError(f"{what} index outside 1..{bound}")
    return tuple(i - 1 for i in indices)


def _field(obj: dict, key: str) -> Any:
    if key not in obj:
        raise FormatError(f"missing field {key!r}")
    return obj[key]


def _matrix(rows, what: str) -> Matrix:
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise FormatError(f"{what} must be a nonempty array of arrays")
    try:
        return Matrix(rows)
    except ShortPivotError as exc:
        raise FormatError(f"{what}: {exc}") from exc


# --- instances ---------------------------------------------------------------


def instance_to_dict(lp: CanonicalLP) -> dict:
    out = {
        "format": INSTANCE,
        "m": lp.m,
        "n": lp.n,
        "A": [_q(row) for row in lp.A],
        "b": _q(lp.b),
        "c": _q(lp.c),
    }
    if lp.x_star is not None:
        out["x_star"] = _q(lp.x_star)
    if lp.y_star is not None:
        out["y_star"] = _q(lp.y_star)
    if lp.seed is not None:
        out["seed"] = lp.seed
    return out


def instance_from_dict(obj: dict) -> CanonicalLP:
    A = _matrix(_field(obj, "A"), "A")
    m, n = _field(obj, "m"), _field(obj, "n")
    if (m, n) != A.shape:
        raise FormatError(f"declared size {m}x{n} but A is {A.rows}x{A.cols}")
    try:
        return CanonicalLP(
            A,
            _rq(_field(obj, "b"), "b"),
            _rq(_field(obj, "c"), "c"),
            x_star=_rq(obj["x_star"], "x_star") if "x_star" in obj else None,
            y_star=_rq(obj["y_star"], "y_star") if "y_star" in obj else None,
            seed=obj.get("seed"),
        )
    except ShortPivotError as exc:
        raise FormatError(str(exc)) from exc


def dump_instance(lp: CanonicalLP) -> str:
    return _dumps(instance_to_dict(lp))


def load_instance(text: str) -> CanonicalLP:
    return instance_from_dict(_loads(text, INSTANCE))


# --- games -------------------------------------------------------------------


def dump_game(game: MatrixGame) -> str:
    return _dumps({"format": INSTANCE, "m": game.m, "n": game.n, "M": [_q(row) for row in game.M]})


def parse_matrix_text(text: str) -> MatrixGame:
    """Rows of rational strings separated by commas, semicolons, tabs or spaces."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([tok for tok in re.split(r"[,;\s]+", line) if tok])
    return MatrixGame(_matrix(rows, "matrix"))


def load_game(text: str) -> MatrixGame:
    """Game from the structured instance format (field ``M``) or delimited text."""
    if text.lstrip().startswith("{"):
        obj = _loads(text, INSTANCE)
        M = _matrix(_field(obj, "M"), "M")
        if ("m" in obj or "n" in obj) and (obj.get("m"), obj.get("n")) != M.shape:
            raise FormatError("declared size differs from M")
        return MatrixGame(M)
    return parse_matrix_text(text)


# --- certificates ------------------------------------------------------------


def certificate_to_dict(cert: PartitionCertificate) -> dict:
    return {
        "format": CERTIFICATE,
        "R": _one_based(cert.partition.rows),
        "C": _one_based(cert.partition.cols),
        "x": _q(cert.pair.x),
        "y": _q(cert.pair.y),
        "objective": format_rational(cert.objective),
    }


def dump_certificate(cert: PartitionCertificate) -> str:
    return _dumps(certificate_to_dict(cert))


def game_certificate_to_dict(cert: GameCertificate) -> dict:
    return {
        "format": GAME_CERTIFICATE,
        "R": _one_based(cert.partition.rows),
        "C": _one_based(cert.partition.cols),
        "u": _q(cert.u),
        "v": _q(cert.v),
        "gamma": format_rational(cert.gamma),
    }


# --- traces ------------------------------------------------------------------


def _tag(tag: CaseTag | None):
    return tag.value if tag is not None else None


def _untag(value) -> CaseTag | None:
    if value is None:
        return None
    try:
        return CaseTag(value)
    except ValueError as exc:
        raise FormatError(f"unknown case_tag {value!r}") from exc


def _pivots_out(pivots) -> list:
    return [[i + 1, j + 1] for i, j in pivots]


def _pivots_in(value, m: int, n: int) -> tuple:
    if not isinstance(value, list) or not all(isinstance(p, list) and len(p) == 2 for p in value):
        raise FormatError("pivots must be a list of [row, col] pairs")
    rows = _zero_based([p[0] for p in value], m, "pivot row")
    cols = _zero_based([p[1] for p in value], n, "pivot column")
    return tuple(zip(rows, cols))


def trace_to_dict(trace: DecompositionTrace) -> dict:
    return {
        "format": TRACE,
        "m": trace.m,
        "n": trace.n,
        "r": trace.r,
        "pivots": _pivots_out(trace.pivots),
        "levels": [
            {
                "k": lev.k,
                "R": _one_based(lev.R),
                "C": _one_based(lev.C),
                "x": _q(lev.x),
                "y": _q(lev.y),
                "objective": format_rational(lev.objective),
                "case_tag": _tag(lev.case_tag),
                "inner_iterations": lev.inner_iterations,
            }
            for lev in trace.levels
        ],
    }


def trace_from_dict(obj: dict) -> DecompositionTrace:
    m, n = _field(obj, "m"), _field(obj, "n")
    pivots = _pivots_in(_field(obj, "pivots"), m, n)
    if _field(obj, "r") != len(pivots):
        raise FormatError("r differs from the number of pivots")
    levels = []
    for lev in _field(obj, "levels"):
        levels.append(
            TraceLevel(
                k=_field(lev, "k"),
                R=_zero_based(_field(lev, "R"), m, "R"),
                C=_zero_based(_field(lev, "C"), n, "C"),
                x=_rq(_field(lev, "x"), "x"),
                y=_rq(_field(lev, "y"), "y"),
                objective=to_rational(_field(lev, "objective")),
                case_tag=_untag(lev.get("case_tag")),
                inner_iterations=lev.get("inner_iterations"),
            )
        )
    return DecompositionTrace(m, n, tuple(levels), pivots)


def dump_trace(trace: DecompositionTrace) -> str:
    return _dumps(trace_to_dict(trace))


def load_trace(text: str) -> DecompositionTrace:
    return trace_from_dict(_loads(text, TRACE))


def game_trace_to_dict(trace: GameTrace) -> dict:
    return {
        "format": GAME_TRACE,
        "m": trace.m,
        "n": trace.n,
        "r": trace.r,
        "direction": trace.direction.value,
        "pivots": _pivots_out(trace.pivots),
        "levels": [
            {
                "k": lev.k,
                "R": _one_based(lev.R),
                "C": _one_based(lev.C),
                "u": _q(lev.u),
                "v": _q(lev.v),
                "gamma": format_rational(lev.gamma),
                "case_tag": _tag(lev.case_tag),
                "inner_iterations": lev.inner_iterations,
            }
            for lev in trace.levels
        ],
    }


def game_trace_from_dict(obj: dict) -> GameTrace:
    m, n = _field(obj, "m"), _field(obj, "n")
    try:
        direction = Direction(_field(obj, "direction"))
    except ValueError as exc:
        raise FormatError(f"unknown direction {obj.get('direction')!r}") from exc
    pivots = _pivots_in(_field(obj, "pivots"), m, n)
    if _field(obj, "r") != len(pivots):
        raise FormatError("r differs from the number of pivots")
    levels = tuple(
        GameLevel(
            k=_field(lev, "k"),
            R=_zero_based(_field(lev, "R"), m, "R"),
            C=_zero_based(_field(lev, "C"), n, "C"),
            u=_rq(_field(lev, "u"), "u"),
            v=_rq(_field(lev, "v"), "v"),
            gamma=to_rational(_field(lev, "gamma")),
            case_tag=_untag(lev.get("case_tag")),
            inner_iterations=lev.get("inner_iterations"),
        )
        for lev in _field(obj, "levels")
    )
    return GameTrace(m, n, direction, levels, pivots)


def dump_game_trace(trace: GameTrace) -> str:
    return _dumps(game_trace_to_dict(trace))


def load_game_trace(text: str) -> GameTrace:
    return game_trace_from_dict(_loads(text, GAME_TRACE))


# --- enumeration reports -----------------------------------------------------

SUMMARY_COLUMNS = ("instance_id", "certificates", "sequences", "min_length", "max_length")


def report_to_dict(report: EnumerationReport) -> dict:
    return {
        "format": ENUMERATION,
        "instance_id": report.instance_id,
        "counts": report.counts,
        "wall_time": report.wall_time,
        "certificates": [
            {
                "R": _one_based(c.partition.rows),
                "C": _one_based(c.partition.cols),
                "x": _q(c.pair.x),
                "y": _q(c.pair.y),
                "objective": format_rational(c.objective),
            }
            for c in report.certificates
        ],
        "sequences": [_pivots_out(s) for s in report.sequences],
    }


def dump_report(report: EnumerationReport) -> str:
    return _dumps(report_to_dict(report))


def summary_rows(reports) -> str:
    """Delimiter-separated count rows, one per report, with a header."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for rep in reports:
        counts = rep.counts
        writer.writerow([rep.instance_id] + ["" if counts[c] is None else counts[c] for c in SUMMARY_COLUMNS[1:]])
    return buf.getvalue()

