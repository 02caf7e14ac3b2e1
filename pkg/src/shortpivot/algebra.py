"""Exact rational vectors, matrices and fraction-free linear solves.

Scalars are :class:`fractions.Fraction`. Vectors are plain tuples of
fractions; matrices are immutable :class:`Matrix` objects. Every solve
clears denominators row by row and runs Bareiss elimination on integers,
so intermediate entries stay bounded by minors of the input.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import FormatError, NonSquare, SingularMatrix, SizeMismatch

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected: silently converting them would smuggle binary
    rounding into an exact computation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise FormatError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            num, _, den = text.partition("/")
            if not den:
                return Fraction(int(num))
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"not a rational: {value!r}") from exc
    raise FormatError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vector(values: Iterable) -> tuple:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise SizeMismatch(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def axpy(alpha: Fraction, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
    """Return ``y + alpha * x``."""
    return tuple(b + alpha * a for a, b in zip(x, y))


def unit(k: int, pos: int) -> tuple:
    return tuple(ONE if p == pos else ZERO for p in range(k))


class Matrix:
    """Dense immutable matrix of fractions."""

    __slots__ = ("_data", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(to_rational(v) for v in row) for row in entries)
        if not data or not data[0]:
            raise SizeMismatch("matrix must have at least one row and column")
        width = len(data[0])
        if any(len(row) != width for row in data):
            raise SizeMismatch("ragged matrix rows")
        self._data = data
        self.rows = len(data)
        self.cols = width

    @classmethod
    def identity(cls, k: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._data[i][j]

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self._data == other._data

    def __hash__(self) -> int:
        return hash(self._data)

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(v) for v in row) + "]" for row in self._data)
        return f"Matrix([{body}])"

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._data))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """Copy of the entries at the given (0-based) row and column indices."""
        return Matrix([[self._data[i][j] for j in cols] for i in rows])

    def matvec(self, x: Sequence[Fraction]) -> tuple:
        if len(x) != self.cols:
            raise SizeMismatch(f"matvec with {self.cols} columns and vector of length {len(x)}")
        return tuple(dot(row, x) for row in self._data)

    def rmatvec(self, y: Sequence[Fraction]) -> tuple:
        """Return ``self.T @ y``."""
        if len(y) != self.rows:
            raise SizeMismatch(f"rmatvec with {self.rows} rows and vector of length {len(y)}")
        return tuple(dot(col, y) for col in zip(*self._data))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale every row by the lcm of its denominators; return rows and scales."""
    out, scales = [], []
    for row in rows:
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([v.numerator * (scale // v.denominator) for v in row])
        scales.append(scale)
    return out, scales


def _bareiss(work: list[list[int]], k: int) -> int:
    """Fraction-free forward elimination on the first ``k`` columns, in place.

    Returns the permutation sign, or 0 when the leading k x k block is
    singular. Extra columns (right-hand sides) are carried along.
    """
    width = len(work[0])
    sign = 1
    prev = 1
    for p in range(k):
        if work[p][p] == 0:
            for q in range(p + 1, k):
                if work[q][p] != 0:
                    work[p], work[q] = work[q], work[p]
                    sign = -sign
                    break
            else:
                return 0
        pivot = work[p][p]
        prow = work[p]
        for q in range(p + 1, k):
            row = work[q]
            lead = row[p]
            for c in range(p + 1, width):
                row[c] = (row[c] * pivot - lead * prow[c]) // prev
            row[p] = 0
        prev = pivot
    return sign


def _check_square(A: Matrix) -> None:
    if not A.is_square:
        raise NonSquare(f"expected a square matrix, got {A.rows}x{A.cols}")


def determinant(A: Matrix) -> Fraction:
    _check_square(A)
    work, scales = _integer_rows(list(A))
    sign = _bareiss(work, A.rows)
    if sign == 0:
        return ZERO
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(sign * work[-1][-1], denom)


def is_nonsingular(A: Matrix) -> bool:
    _check_square(A)
    work, _ = _integer_rows(list(A))
    return _bareiss(work, A.rows) != 0


def solve_many(A: Matrix, rhs_list: Sequence[Sequence[Fraction]]) -> list[tuple]:
    """Solve ``A x = r`` for every ``r`` in ``rhs_list`` with one elimination."""
    _check_square(A)
    k = A.rows
    for rhs in rhs_list:
        if len(rhs) != k:
            raise SizeMismatch(f"right-hand side of length {len(rhs)} for a {k}x{k} system")
    augmented = [list(A.row(i)) + [to_rational(r[i]) for r in rhs_list] for i in range(k)]
    work, _ = _integer_rows(augmented)
    if _bareiss(work, k) == 0:
        raise SingularMatrix(f"{k}x{k} matrix is singular")
    solutions = []
    for col in range(k, k + len(rhs_list)):
        x = [ZERO] * k
        for i in range(k - 1, -1, -1):
            row = work[i]
            acc = Fraction(row[col])
            for j in range(i + 1, k):
                if row[j]:
                    acc -= row[j] * x[j]
            x[i] = acc / row[i]
        solutions.append(tuple(x))
    return solutions


def solve_linear(A: Matrix, rhs: Sequence[Fraction]) -> tuple:
    """Exact solution of ``A x = rhs``; raises SingularMatrix when rank(A) < k."""
    return solve_many(A, [rhs])[0]


def transpose_solve(A: Matrix, rhs: Sequence[Fraction]) -> tuple:
    """Exact solution of ``A.T y = rhs``."""
    _check_square(A)
    return solve_many(A.T, [rhs])[0]
