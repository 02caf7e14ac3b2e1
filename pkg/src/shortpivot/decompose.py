"""Shrinking an optimal basis one row and one column at a time.

Given a nonsingular ``A_RC`` with nonnegative basic pair ``(x, y)``, a
reduction removes a row ``i`` and a column ``j`` so that the smaller basis
is nonsingular and its basic pair is still nonnegative. Repeating this
down to a 1x1 basis and reversing the removals gives a pivot sequence of
length ``r = |R+|`` whose nested bases are optimal for every restricted
pair. :func:`replay` checks such a sequence forward from the origin.

The reduction logic in :func:`reduction_core` only sees vectors and two
direction callbacks, so :mod:`shortpivot.game` reuses it for bordered
systems.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import ZERO, dot, solve_many, unit
from .errors import (
    IdentityViolated,
    InnerLoopCapExceeded,
    InternalInvariant,
    InvalidCertificate,
    InvalidPivotSequence,
    NegativeComponentAtLevel,
    NoBlockingComponent,
    SingularBasis,
    SingularBasisAtLevel,
    SingularMatrix,
    SizeMismatch,
)
from .model import (
    BasicPair,
    CanonicalLP,
    PartitionCertificate,
    basic_pair,
    certificate_from_sets,
    check_certificate,
)


class StepSign(enum.Enum):
    POSITIVE = "pos"
    NEGATIVE = "neg"

    @property
    def other(self) -> "StepSign":
        return StepSign.NEGATIVE if self is StepSign.POSITIVE else StepSign.POSITIVE


class CaseTag(enum.Enum):
    Y_ZERO = "y_zero"
    X_ZERO = "x_zero"
    STRICT_POSITIVE = "strict_positive"


def ratio_step(vec: Sequence[Fraction], dvec: Sequence[Fraction], sign: StepSign) -> tuple[Fraction, int]:
    """Most limiting step keeping ``vec + step * dvec`` nonnegative.

    POSITIVE minimizes ``vec_j / -dvec_j`` over ``dvec_j < 0``; NEGATIVE
    maximizes it over ``dvec_j > 0``. Ties go to the smallest position.
    Returns ``(step, position)`` with a 0-based position.
    """
    best = None
    for p, (v, d) in enumerate(zip(vec, dvec)):
        if (d < 0) if sign is StepSign.POSITIVE else (d > 0):
            step = v / -d
            if best is None or (step < best[0] if sign is StepSign.POSITIVE else step > best[0]):
                best = (step, p)
    if best is None:
        raise NoBlockingComponent(f"no component blocks a {sign.name.lower()} step")
    return best


def _nonneg(v: Sequence[Fraction]) -> bool:
    return all(a >= 0 for a in v)


def _drop(v: Sequence[Fraction], pos: int) -> tuple:
    return tuple(a for p, a in enumerate(v) if p != pos)


@dataclass(frozen=True)
class CoreStep:
    """Outcome of one reduction, in positions relative to the parent basis."""

    i: int
    j: int
    case_tag: CaseTag
    sign: StepSign
    s: Fraction | None
    t: Fraction | None
    x_child: tuple
    y_child: tuple
    inner_iterations: int
    candidates: tuple


def _step_with_fallback(vec, dvec, prefer: StepSign) -> tuple[StepSign, Fraction, int]:
    try:
        step, pos = ratio_step(vec, dvec, prefer)
        return prefer, step, pos
    except NoBlockingComponent:
        pass
    try:
        step, pos = ratio_step(vec, dvec, prefer.other)
        return prefer.other, step, pos
    except NoBlockingComponent as exc:
        raise InternalInvariant("direction vector is identically zero") from exc


def reduction_core(
    x: Sequence[Fraction],
    y: Sequence[Fraction],
    primal_direction: Callable[[int], tuple],
    dual_direction: Callable[[int], tuple],
    base: Fraction,
    prefer: StepSign = StepSign.POSITIVE,
) -> CoreStep:
    """Pick the removed row/column for one reduction.

    ``primal_direction(i)`` must return the direction on the columns for a
    unit right-hand side at row position ``i``; ``dual_direction(j)`` the
    direction on the rows for column position ``j``. ``base`` is the common
    objective of ``(x, y)``; the candidate objective of a pair ``(i, j)``
    with primal step ``s`` is ``base + s * y[i]``.
    """
    k = len(x)
    if k < 2 or len(y) != k:
        raise SizeMismatch(f"reduction needs k >= 2 and |x| = |y|, got {len(x)}, {len(y)}")
    if not (_nonneg(x) and _nonneg(y)):
        raise InvalidCertificate("reduction needs a nonnegative pair")

    i = next((p for p, v in enumerate(y) if v == 0), None)
    if i is not None:
        dx = primal_direction(i)
        sign, s, j = _step_with_fallback(x, dx, prefer)
        return _finish(x, y, i, j, s, None, dx, None, CaseTag.Y_ZERO, sign, 1, (base + s * y[i],))

    j = next((p for p, v in enumerate(x) if v == 0), None)
    if j is not None:
        dy = dual_direction(j)
        sign, t, i = _step_with_fallback(y, dy, prefer)
        return _finish(x, y, i, j, None, t, None, dy, CaseTag.X_ZERO, sign, 1, (base + t * x[j],))

    i = 0
    dx = primal_direction(i)
    sign, s, j = _step_with_fallback(x, dx, prefer)
    candidates = [base + s * y[i]]
    visited = {(i, j)}

    def record(value: Fraction, pair: tuple) -> None:
        last = candidates[-1]
        improving = value < last if sign is StepSign.POSITIVE else value > last
        if not improving or pair in visited:
            raise InternalInvariant(
                f"inner loop lost strict monotonicity at pair {pair}: {last} -> {value}"
            )
        candidates.append(value)
        visited.add(pair)
        if len(candidates) > k * k:
            raise InnerLoopCapExceeded(
                f"inner loop exceeded {k * k} pairs",
                {"x": x, "y": y, "pairs": sorted(visited), "candidates": candidates},
            )

    while True:
        dy = dual_direction(j)
        if dy[i] != dx[j]:
            raise IdentityViolated(f"dx_j = {dx[j]} but dy_i = {dy[i]}")
        t = -y[i] / dy[i]
        if _nonneg(a + t * d for a, d in zip(y, dy)):
            break
        t, i = ratio_step(y, dy, sign)
        record(base + t * x[j], (i, j))
        dx = primal_direction(i)
        if dx[j] != dy[i]:
            raise IdentityViolated(f"dx_j = {dx[j]} but dy_i = {dy[i]}")
        s = -x[j] / dx[j]
        if _nonneg(a + s * d for a, d in zip(x, dx)):
            break
        s, j = ratio_step(x, dx, sign)
        record(base + s * y[i], (i, j))
    return _finish(x, y, i, j, s, t, dx, dy, CaseTag.STRICT_POSITIVE, sign, len(candidates), tuple(candidates))


def _finish(x, y, i, j, s, t, dx, dy, tag, sign, iterations, candidates) -> CoreStep:
    xs = tuple(a + s * d for a, d in zip(x, dx)) if dx is not None else tuple(x)
    ys = tuple(a + t * d for a, d in zip(y, dy)) if dy is not None else tuple(y)
    if xs[j] != 0 or ys[i] != 0:
        raise InternalInvariant(f"removed components not zero: x_j={xs[j]}, y_i={ys[i]}")
    if not (_nonneg(xs) and _nonneg(ys)):
        raise InternalInvariant("reduced pair lost nonnegativity")
    return CoreStep(i, j, tag, sign, s, t, _drop(xs, j), _drop(ys, i), iterations, candidates)


# --- LP flavour -------------------------------------------------------------


@dataclass(frozen=True)
class DirectionPair:
    i: int
    j: int
    dx: tuple
    dy: tuple


@dataclass(frozen=True)
class StepPair:
    s: Fraction
    t: Fraction


@dataclass(frozen=True)
class IdentityReport:
    primal_objective: Fraction
    dual_objective: Fraction
    c_dx: Fraction
    y_i: Fraction
    b_dy: Fraction
    x_j: Fraction
    dx_j: Fraction
    dy_i: Fraction
    steps: StepPair | None
    stepped_primal_objective: Fraction | None
    stepped_dual_objective: Fraction | None

    @property
    def unique_steps(self) -> bool:
        return self.steps is not None


@dataclass(frozen=True)
class ReductionStep:
    removed_row: int
    removed_col: int
    case_tag: CaseTag
    inner_iterations: int
    child_pair: BasicPair
    sign: StepSign
    s: Fraction | None = None
    t: Fraction | None = None
    candidates: tuple = ()


@dataclass(frozen=True)
class TraceLevel:
    k: int
    R: tuple
    C: tuple
    x: tuple
    y: tuple
    objective: Fraction
    case_tag: CaseTag | None = None
    inner_iterations: int | None = None

    def same_values(self, other: "TraceLevel") -> bool:
        return (self.k, self.R, self.C, self.x, self.y, self.objective) == (
            other.k, other.R, other.C, other.x, other.y, other.objective,
        )


@dataclass(frozen=True)
class DecompositionTrace:
    """Levels ``k = 1..r`` in forward order plus the forward pivot list."""

    m: int
    n: int
    levels: tuple
    pivots: tuple

    @property
    def r(self) -> int:
        return len(self.pivots)

    def same_values(self, other: "DecompositionTrace") -> bool:
        return (
            (self.m, self.n, self.pivots) == (other.m, other.n, other.pivots)
            and len(self.levels) == len(other.levels)
            and all(a.same_values(b) for a, b in zip(self.levels, other.levels))
        )


def _basis_system(lp: CanonicalLP, R: Sequence[int], C: Sequence[int]):
    B = lp.A.submatrix(R, C)
    try:
        solve_many(B, [])
    except SingularMatrix as exc:
        raise SingularBasis(f"A_RC singular for R={tuple(R)}, C={tuple(C)}") from exc
    return B, B.T


def directions(lp: CanonicalLP, R: Sequence[int], C: Sequence[int], i: int, j: int) -> DirectionPair:
    """Solve ``A_RC dx = e_i`` and ``A_RC^T dy = e_j`` (``i`` in R, ``j`` in C)."""
    R, C = tuple(R), tuple(C)
    if i not in R or j not in C:
        raise SizeMismatch(f"pivot ({i}, {j}) not inside R={R}, C={C}")
    B, BT = _basis_system(lp, R, C)
    k = len(R)
    (dx,) = solve_many(B, [unit(k, R.index(i))])
    (dy,) = solve_many(BT, [unit(k, C.index(j))])
    if dx[C.index(j)] != dy[R.index(i)]:
        raise IdentityViolated("dx_j differs from dy_i")
    return DirectionPair(i, j, dx, dy)


def basis_identities(lp: CanonicalLP, R: Sequence[int], C: Sequence[int], i: int, j: int) -> IdentityReport:
    """Evaluate the basis identities for ``(R, C, i, j)`` and raise if any fails."""
    R, C = tuple(R), tuple(C)
    pair = basic_pair(lp, R, C)
    d = directions(lp, R, C, i, j)
    bR = tuple(lp.b[r] for r in R)
    cC = tuple(lp.c[c] for c in C)
    pi, pj = R.index(i), C.index(j)
    report = dict(
        primal_objective=dot(cC, pair.x),
        dual_objective=dot(bR, pair.y),
        c_dx=dot(cC, d.dx),
        y_i=pair.y[pi],
        b_dy=dot(bR, d.dy),
        x_j=pair.x[pj],
        dx_j=d.dx[pj],
        dy_i=d.dy[pi],
    )
    steps = stepped_p = stepped_d = None
    if report["dx_j"] != 0:
        s = -pair.x[pj] / d.dx[pj]
        t = -pair.y[pi] / d.dy[pi]
        steps = StepPair(s, t)
        stepped_p = dot(cC, [a + s * b for a, b in zip(pair.x, d.dx)])
        stepped_d = dot(bR, [a + t * b for a, b in zip(pair.y, d.dy)])
    rep = IdentityReport(**report, steps=steps, stepped_primal_objective=stepped_p, stepped_dual_objective=stepped_d)
    failures = []
    if rep.primal_objective != rep.dual_objective:
        failures.append("c^T x = b^T y")
    if rep.c_dx != rep.y_i:
        failures.append("c^T dx = y_i")
    if rep.b_dy != rep.x_j:
        failures.append("b^T dy = x_j")
    if rep.dx_j != rep.dy_i:
        failures.append("dx_j = dy_i")
    if steps is not None and stepped_p != stepped_d:
        failures.append("c^T (x + s dx) = b^T (y + t dy)")
    if failures:
        raise IdentityViolated(", ".join(failures))
    return rep


def reduce_once(
    lp: CanonicalLP,
    R: Sequence[int],
    C: Sequence[int],
    pair: BasicPair,
    prefer: StepSign = StepSign.POSITIVE,
) -> ReductionStep:
    """Remove one row and one column from a nonnegative optimal basis."""
    R, C = tuple(R), tuple(C)
    if len(R) < 2 or len(R) != len(C):
        raise SizeMismatch(f"reduce_once needs |R| = |C| >= 2, got {len(R)}, {len(C)}")
    B, BT = _basis_system(lp, R, C)
    k = len(R)
    core = reduction_core(
        pair.x,
        pair.y,
        lambda p: solve_many(B, [unit(k, p)])[0],
        lambda p: solve_many(BT, [unit(k, p)])[0],
        dot(tuple(lp.c[c] for c in C), pair.x),
        prefer,
    )
    R1 = _drop(R, core.i)
    C1 = _drop(C, core.j)
    try:
        child = basic_pair(lp, R1, C1)
    except SingularBasis as exc:
        raise SingularBasis(f"reduced basis singular after removing ({R[core.i]}, {C[core.j]})") from exc
    if child.x != core.x_child or child.y != core.y_child:
        raise InternalInvariant("fresh solve on the reduced basis disagrees with the stepped pair")
    return ReductionStep(
        removed_row=R[core.i],
        removed_col=C[core.j],
        case_tag=core.case_tag,
        inner_iterations=core.inner_iterations,
        child_pair=child,
        sign=core.sign,
        s=core.s,
        t=core.t,
        candidates=core.candidates,
    )


def _level(lp: CanonicalLP, k: int, pair: BasicPair, step: ReductionStep | None = None) -> TraceLevel:
    return TraceLevel(
        k=k,
        R=pair.R,
        C=pair.C,
        x=pair.x,
        y=pair.y,
        objective=dot(tuple(lp.c[j] for j in pair.C), pair.x),
        case_tag=step.case_tag if step else None,
        inner_iterations=step.inner_iterations if step else None,
    )


def decompose(
    lp: CanonicalLP,
    cert: PartitionCertificate,
    prefer: StepSign = StepSign.POSITIVE,
) -> DecompositionTrace:
    """Reduce the certificate basis to 1x1 and return the forward trace."""
    report = check_certificate(lp, cert)
    if not report:
        raise InvalidCertificate(f"certificate fails: {report.violations}")
    r = cert.r
    pair = cert.pair
    backward = []
    removed = []
    for k in range(r, 1, -1):
        step = reduce_once(lp, pair.R, pair.C, pair, prefer)
        backward.append(_level(lp, k, pair, step))
        removed.append((step.removed_row, step.removed_col))
        pair = step.child_pair
    if r >= 1:
        backward.append(_level(lp, 1, pair))
        removed.append((pair.R[0], pair.C[0]))
    levels = tuple(reversed(backward))
    pivots = tuple(reversed(removed))
    for lev in levels:
        if not (_nonneg(lev.x) and _nonneg(lev.y)) or lev.objective != dot(tuple(lp.b[i] for i in lev.R), lev.y):
            raise InternalInvariant(f"level {lev.k} is not optimal for its restricted pair")
    return DecompositionTrace(lp.m, lp.n, levels, pivots)


def replay(lp: CanonicalLP, pivots: Sequence[tuple[int, int]]) -> DecompositionTrace:
    """Grow the bases along ``pivots`` and check every level from scratch."""
    pivots = tuple((int(i), int(j)) for i, j in pivots)
    rows = [i for i, _ in pivots]
    cols = [j for _, j in pivots]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise InvalidPivotSequence("pivot rows and columns must be distinct")
    if any(not 0 <= i < lp.m for i in rows) or any(not 0 <= j < lp.n for j in cols):
        raise InvalidPivotSequence("pivot index out of range")
    levels = []
    for k in range(1, len(pivots) + 1):
        R = tuple(sorted(rows[:k]))
        C = tuple(sorted(cols[:k]))
        try:
            pair = basic_pair(lp, R, C)
        except SingularBasis as exc:
            raise SingularBasisAtLevel(k, f"A_RC singular for R={R}, C={C}") from exc
        if not pair.nonnegative:
            raise NegativeComponentAtLevel(k, f"negative component in x={pair.x} or y={pair.y}")
        levels.append(_level(lp, k, pair))
    return DecompositionTrace(lp.m, lp.n, tuple(levels), pivots)


def final_certificate(lp: CanonicalLP, trace: DecompositionTrace) -> PartitionCertificate:
    """Certificate candidate formed by the last level of a trace (origin if empty)."""
    if not trace.levels:
        return certificate_from_sets(lp, (), ())
    last = trace.levels[-1]
    return certificate_from_sets(lp, last.R, last.C)


def is_optimal_trace(lp: CanonicalLP, trace: DecompositionTrace) -> bool:
    return bool(check_certificate(lp, final_certificate(lp, trace)))


def relaxed_reduce(lp: CanonicalLP, R: Sequence[int], C: Sequence[int]) -> list[tuple[int, int]]:
    """Shrink any nonsingular basis to 1x1 ignoring signs.

    Each step removes the smallest remaining row ``i`` together with the
    smallest column ``j`` where the direction for ``e_i`` is nonzero.
    """
    if len(R) != len(C):
        raise SizeMismatch(f"|R|={len(R)} differs from |C|={len(C)}")
    R, C = sorted(R), sorted(C)
    _basis_system(lp, R, C)
    removals = []
    while len(R) > 1:
        i = R[0]
        dx = directions(lp, R, C, i, C[0]).dx
        pos = next(p for p, v in enumerate(dx) if v != 0)
        removals.append((i, C[pos]))
        R.pop(0)
        C.pop(pos)
        try:
            _basis_system(lp, R, C)
        except SingularBasis as exc:
            raise InternalInvariant("relaxed reduction produced a singular basis") from exc
    return removals
