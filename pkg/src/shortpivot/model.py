"""Canonical primal-dual LP pair, basic solutions and optimality certificates.

The primal is ``min c^T x  s.t.  A x >= b, x >= 0`` and the dual is
``max b^T y  s.t.  A^T y <= c, y >= 0``. Index sets are 0-based tuples
inside the package; files and printed reports use 1-based indices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import ZERO, Matrix, dot, is_nonsingular, solve_many, vector
from .errors import (
    EmptySelection,
    IndexOutOfRange,
    SingularBasis,
    SingularMatrix,
    SizeMismatch,
)


@dataclass(frozen=True)
class CanonicalLP:
    A: Matrix
    b: tuple
    c: tuple
    x_star: tuple | None = None
    y_star: tuple | None = None
    seed: int | None = None

    def __post_init__(self):
        if not isinstance(self.A, Matrix):
            object.__setattr__(self, "A", Matrix(self.A))
        object.__setattr__(self, "b", vector(self.b))
        object.__setattr__(self, "c", vector(self.c))
        if len(self.b) != self.A.rows or len(self.c) != self.A.cols:
            raise SizeMismatch(
                f"A is {self.A.rows}x{self.A.cols} but |b|={len(self.b)}, |c|={len(self.c)}"
            )
        for name in ("x_star", "y_star"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, vector(value))
        if self.x_star is not None and len(self.x_star) != self.n:
            raise SizeMismatch("x_star length differs from n")
        if self.y_star is not None and len(self.y_star) != self.m:
            raise SizeMismatch("y_star length differs from m")

    @property
    def m(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    def same_data(self, other: "CanonicalLP") -> bool:
        return self.A == other.A and self.b == other.b and self.c == other.c


@dataclass(frozen=True)
class IndexPartition:
    """Row set R+ and column set C+ (0-based, ascending)."""

    rows: tuple = ()
    cols: tuple = ()

    def __post_init__(self):
        rows, cols = tuple(self.rows), tuple(self.cols)
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise SizeMismatch("duplicate indices in partition")
        if len(rows) != len(cols):
            raise SizeMismatch(f"|R+|={len(rows)} differs from |C+|={len(cols)}")
        object.__setattr__(self, "rows", tuple(sorted(rows)))
        object.__setattr__(self, "cols", tuple(sorted(cols)))

    @property
    def size(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class BasicPair:
    """Primal values ``x`` on columns ``C`` and dual values ``y`` on rows ``R``."""

    R: tuple
    C: tuple
    x: tuple
    y: tuple

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.x) and all(v >= 0 for v in self.y)

    def padded_x(self, n: int) -> tuple:
        full = [ZERO] * n
        for j, v in zip(self.C, self.x):
            full[j] = v
        return tuple(full)

    def padded_y(self, m: int) -> tuple:
        full = [ZERO] * m
        for i, v in zip(self.R, self.y):
            full[i] = v
        return tuple(full)


@dataclass(frozen=True)
class PartitionCertificate:
    partition: IndexPartition
    pair: BasicPair
    objective: Fraction

    @property
    def r(self) -> int:
        return self.partition.size


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    violations: tuple = field(default_factory=tuple)

    def __bool__(self) -> bool:
        return self.ok


def _check_indices(indices: Sequence[int], bound: int, what: str) -> None:
    for i in indices:
        if not isinstance(i, int) or i < 0 or i >= bound:
            raise IndexOutOfRange(f"{what} index {i} outside 0..{bound - 1}")


def subproblem(lp: CanonicalLP, R: Sequence[int], C: Sequence[int]) -> CanonicalLP:
    """The restricted pair with data ``A_RC``, ``b_R``, ``c_C`` (order kept)."""
    if not R or not C:
        raise EmptySelection("subproblem needs nonempty row and column sets")
    _check_indices(R, lp.m, "row")
    _check_indices(C, lp.n, "column")
    return CanonicalLP(
        lp.A.submatrix(R, C),
        tuple(lp.b[i] for i in R),
        tuple(lp.c[j] for j in C),
    )


def basic_pair(lp: CanonicalLP, R: Sequence[int], C: Sequence[int]) -> BasicPair:
    """Solve ``A_RC x = b_R`` and ``A_RC^T y = c_C`` exactly."""
    R, C = tuple(R), tuple(C)
    if len(R) != len(C):
        raise SizeMismatch(f"|R|={len(R)} differs from |C|={len(C)}")
    if not R:
        return BasicPair((), (), (), ())
    _check_indices(R, lp.m, "row")
    _check_indices(C, lp.n, "column")
    B = lp.A.submatrix(R, C)
    try:
        (x,) = solve_many(B, [tuple(lp.b[i] for i in R)])
        (y,) = solve_many(B.T, [tuple(lp.c[j] for j in C)])
    except SingularMatrix as exc:
        raise SingularBasis(f"A_RC singular for R={R}, C={C}") from exc
    return BasicPair(R, C, x, y)


def check_certificate(lp: CanonicalLP, cert: PartitionCertificate) -> CertificateCheck:
    """Check every optimality condition of a partition certificate exactly."""
    part, pair = cert.partition, cert.pair
    Rp, Cp = part.rows, part.cols
    _check_indices(Rp, lp.m, "row")
    _check_indices(Cp, lp.n, "column")
    if tuple(pair.R) != Rp or tuple(pair.C) != Cp:
        return CertificateCheck(False, ("pair index sets match partition",))
    if len(pair.x) != len(Cp) or len(pair.y) != len(Rp):
        return CertificateCheck(False, ("pair dimensions match partition",))
    violations = []
    R0 = [i for i in range(lp.m) if i not in set(Rp)]
    C0 = [j for j in range(lp.n) if j not in set(Cp)]
    xfull = pair.padded_x(lp.n)
    yfull = pair.padded_y(lp.m)
    if Rp:
        if not is_nonsingular(lp.A.submatrix(Rp, Cp)):
            violations.append("A_{R+C+} nonsingular")
        if any(dot(lp.A.row(i), xfull) != lp.b[i] for i in Rp):
            violations.append("A_{R+C+} x = b_{R+}")
        if any(dot(lp.A.column(j), yfull) != lp.c[j] for j in Cp):
            violations.append("A_{R+C+}^T y = c_{C+}")
    if any(dot(lp.A.row(i), xfull) < lp.b[i] for i in R0):
        violations.append("A_{R0C+} x >= b_{R0}")
    if any(dot(lp.A.column(j), yfull) > lp.c[j] for j in C0):
        violations.append("A_{R+C0}^T y <= c_{C0}")
    if any(v < 0 for v in pair.x):
        violations.append("x >= 0")
    if any(v < 0 for v in pair.y):
        violations.append("y >= 0")
    if not violations:
        primal = dot(lp.c, xfull)
        dual = dot(lp.b, yfull)
        if primal != dual or cert.objective != primal:
            violations.append("objective = c^T x = b^T y")
    return CertificateCheck(not violations, tuple(violations))


def certificate_from_sets(lp: CanonicalLP, R: Sequence[int], C: Sequence[int]) -> PartitionCertificate:
    """Build the certificate candidate for ``(R, C)``; validity is not checked."""
    part = IndexPartition(tuple(R), tuple(C))
    pair = basic_pair(lp, part.rows, part.cols)
    objective = dot(lp.c, pair.padded_x(lp.n))
    return PartitionCertificate(part, pair, objective)


def is_primal_feasible(lp: CanonicalLP, x: Sequence[Fraction]) -> bool:
    return all(v >= 0 for v in x) and all(a >= bi for a, bi in zip(lp.A.matvec(x), lp.b))


def is_dual_feasible(lp: CanonicalLP, y: Sequence[Fraction]) -> bool:
    return all(v >= 0 for v in y) and all(a <= cj for a, cj in zip(lp.A.rmatvec(y), lp.c))


def generate_instance(
    m: int,
    n: int,
    seed: int,
    entry_range: tuple[int, int] = (-9, 9),
) -> CanonicalLP:
    """Random pair with both problems feasible by construction.

    Draws integer ``A`` in ``entry_range`` and nonnegative witnesses
    ``x*``, ``y*`` (roughly a third of their entries zero), then sets
    ``b = A x* - slack`` and ``c = A^T y* + slack`` with nonnegative
    slacks that are often zero.
    """
    if m < 1 or n < 1:
        raise SizeMismatch("m and n must be at least 1")
    lo, hi = entry_range
    rng = random.Random(seed)
    A = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]

    def witness(k: int) -> list[int]:
        return [0 if rng.random() < 1 / 3 else rng.randint(1, 3) for _ in range(k)]

    def slack() -> int:
        return 0 if rng.random() < 0.5 else rng.randint(1, 3)

    x_star = witness(n)
    y_star = witness(m)
    b = [sum(A[i][j] * x_star[j] for j in range(n)) - slack() for i in range(m)]
    c = [sum(A[i][j] * y_star[i] for i in range(m)) + slack() for j in range(n)]
    return CanonicalLP(Matrix(A), b, c, x_star=x_star, y_star=y_star, seed=seed)
