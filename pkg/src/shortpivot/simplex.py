"""Exact two-phase simplex on the slack-augmented standard form.

``A x >= b`` becomes ``A x - s = b`` with ``s >= 0``; the columns of the
standard form are ``[A, -I]`` followed, during phase 1, by artificials.
Bland's smallest-index rule is used for every entering and leaving
choice. At the optimum the basis splits into structural columns (C+) and
slack columns; rows whose slack is nonbasic form R+.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ZERO, format_rational, is_nonsingular
from .errors import InternalInvariant, PartitionRepairFailed, SingularBasis
from .model import (
    CanonicalLP,
    IndexPartition,
    PartitionCertificate,
    certificate_from_sets,
    check_certificate,
)


class Status(enum.Enum):
    OPTIMAL = "optimal"
    PRIMAL_INFEASIBLE = "primal_infeasible"
    DUAL_INFEASIBLE = "dual_infeasible"


@dataclass
class StandardFormTableau:
    """Dense tableau ``B^-1 [A, -I, art | b]`` owned by a single solve."""

    m: int
    n: int
    rows: list
    basis: list
    n_artificial: int = 0
    phase: int = 1
    reduced: list = field(default_factory=list)
    value: Fraction = ZERO

    @property
    def width(self) -> int:
        return self.n + self.m + self.n_artificial

    @property
    def basic_values(self) -> tuple:
        return tuple(row[-1] for row in self.rows)

    def is_artificial(self, col: int) -> bool:
        return col >= self.n + self.m

    def set_costs(self, costs: list) -> None:
        """Reset the objective row for the given column costs."""
        width = self.width
        reduced = list(costs) + [ZERO]
        for row, bcol in zip(self.rows, self.basis):
            cb = costs[bcol]
            if cb:
                for j in range(width + 1):
                    if row[j]:
                        reduced[j] -= cb * row[j]
        self.reduced = reduced[:-1]
        self.value = -reduced[-1]

    def pivot(self, r: int, col: int) -> None:
        prow = self.rows[r]
        piv = prow[col]
        if piv == 0:
            raise InternalInvariant(f"zero pivot at row {r}, column {col}")
        if piv != 1:
            prow[:] = [v / piv for v in prow]
        for i, row in enumerate(self.rows):
            if i != r and row[col]:
                f = row[col]
                row[:] = [a - f * b for a, b in zip(row, prow)]
        d = self.reduced[col]
        if d:
            self.reduced = [a - d * b for a, b in zip(self.reduced, prow[:-1])]
            self.value += d * prow[-1]
        self.basis[r] = col


@dataclass
class SolveOutcome:
    status: Status
    certificate: PartitionCertificate | None = None
    tableau: StandardFormTableau | None = None
    pivot_log: list = field(default_factory=list)
    bases: list = field(default_factory=list)

    @property
    def objective(self) -> Fraction | None:
        return self.certificate.objective if self.certificate is not None else None


def _initial_tableau(lp: CanonicalLP) -> StandardFormTableau:
    m, n = lp.m, lp.n
    needs_art = [i for i in range(m) if lp.b[i] > 0]
    n_art = len(needs_art)
    width = n + m + n_art
    rows, basis = [], []
    for i in range(m):
        row = [ZERO] * (width + 1)
        if lp.b[i] > 0:
            for j in range(n):
                row[j] = lp.A[i, j]
            row[n + i] = Fraction(-1)
            a = n + m + needs_art.index(i)
            row[a] = Fraction(1)
            row[-1] = lp.b[i]
            basis.append(a)
        else:
            for j in range(n):
                row[j] = -lp.A[i, j]
            row[n + i] = Fraction(1)
            row[-1] = -lp.b[i]
            basis.append(n + i)
        rows.append(row)
    return StandardFormTableau(m, n, rows, basis, n_artificial=n_art)


class _Run:
    def __init__(self, tab: StandardFormTableau):
        self.tab = tab
        self.log: list[str] = []
        self.bases: list[frozenset] = [frozenset(tab.basis)]
        self._seen = {self.bases[0]}

    def do_pivot(self, r: int, col: int) -> None:
        leave = self.tab.basis[r]
        self.tab.pivot(r, col)
        self.log.append(
            f"phase={self.tab.phase} enter={col + 1} leave={leave + 1} "
            f"objective={format_rational(self.tab.value)}"
        )
        key = frozenset(self.tab.basis)
        if key in self._seen:
            raise InternalInvariant(f"basis repeated under Bland's rule: {sorted(key)}")
        self._seen.add(key)
        self.bases.append(key)

    def iterate(self, allowed: int) -> bool:
        """Run Bland pivots until optimal (True) or unbounded (False)."""
        tab = self.tab
        while True:
            col = next((j for j in range(allowed) if tab.reduced[j] < 0), None)
            if col is None:
                return True
            best = None
            for r, row in enumerate(tab.rows):
                a = row[col]
                if a > 0:
                    key = (row[-1] / a, tab.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return False
            self.do_pivot(best[1], col)


def extract_partition(tableau: StandardFormTableau) -> IndexPartition:
    """C+ = basic structural columns; R+ = rows whose slack is nonbasic."""
    n, m = tableau.n, tableau.m
    if any(tableau.is_artificial(c) for c in tableau.basis):
        raise PartitionRepairFailed("artificial column left in the final basis")
    basis = set(tableau.basis)
    cols = tuple(sorted(j for j in basis if j < n))
    rows = tuple(i for i in range(m) if n + i not in basis)
    if len(rows) != len(cols):
        raise PartitionRepairFailed(f"|R+|={len(rows)} but |C+|={len(cols)}")
    return IndexPartition(rows, cols)


def _check_partition_nonsingular(lp: CanonicalLP, part: IndexPartition) -> None:
    if part.size and not is_nonsingular(lp.A.submatrix(part.rows, part.cols)):
        raise PartitionRepairFailed(f"A_{{R+C+}} singular for {part}")


def solve_canonical(lp: CanonicalLP) -> SolveOutcome:
    """Solve the pair exactly and return an optimality certificate if one exists."""
    tab = _initial_tableau(lp)
    run = _Run(tab)
    if tab.n_artificial:
        tab.phase = 1
        tab.set_costs([ZERO] * (lp.n + lp.m) + [Fraction(1)] * tab.n_artificial)
        if not run.iterate(tab.width):
            raise InternalInvariant("phase 1 objective unbounded")
        if tab.value > 0:
            return SolveOutcome(Status.PRIMAL_INFEASIBLE, tableau=tab, pivot_log=run.log, bases=run.bases)
        for r in range(lp.m):
            if tab.is_artificial(tab.basis[r]):
                row = tab.rows[r]
                col = next((j for j in range(lp.n + lp.m) if row[j] != 0), None)
                if col is None:
                    raise InternalInvariant("[A, -I] lost full row rank")
                run.do_pivot(r, col)
    tab.phase = 2
    costs = list(lp.c) + [ZERO] * (lp.m + tab.n_artificial)
    tab.set_costs(costs)
    if not run.iterate(lp.n + lp.m):
        return SolveOutcome(Status.DUAL_INFEASIBLE, tableau=tab, pivot_log=run.log, bases=run.bases)

    part = extract_partition(tab)
    _check_partition_nonsingular(lp, part)
    try:
        cert = certificate_from_sets(lp, part.rows, part.cols)
    except SingularBasis as exc:
        raise PartitionRepairFailed(str(exc)) from exc
    values = dict(zip(tab.basis, tab.basic_values))
    if any(values[j] != v for j, v in zip(part.cols, cert.pair.x)):
        raise InternalInvariant("tableau values disagree with the basis solve")
    if cert.objective != tab.value:
        raise InternalInvariant("tableau objective disagrees with c^T x")
    report = check_certificate(lp, cert)
    if not report:
        raise InternalInvariant(f"optimal basis fails certificate check: {report.violations}")
    return SolveOutcome(Status.OPTIMAL, cert, tableau=tab, pivot_log=run.log, bases=run.bases)
