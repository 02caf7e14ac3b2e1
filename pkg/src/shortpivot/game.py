"""Decomposing a matrix by convex combinations (zero-sum matrix games).

The primal is ``min alpha  s.t.  M u + e alpha >= 0, e^T u = 1, u >= 0``
and the dual ``max beta  s.t.  M^T v + e beta <= 0, e^T v = 1, v >= 0``.
A basis is a pair ``(R, C)`` whose bordered matrix
``[[M_RC, e], [e^T, 0]]`` is nonsingular.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import ONE, ZERO, Matrix, solve_many, unit
from .decompose import CaseTag, StepSign, reduction_core
from .errors import (
    CertificateAssemblyFailed,
    DirectionUnavailable,
    IdentityViolated,
    InternalInvariant,
    InvalidCertificate,
    SingularBorderedBasis,
    SingularMatrix,
    SizeMismatch,
)
from .model import CanonicalLP, CertificateCheck, IndexPartition
from .simplex import Status, solve_canonical

log = logging.getLogger(__name__)


class Direction(enum.Enum):
    """Which way the game value may move when a basis shrinks by one."""

    DECREASING = "dec"
    INCREASING = "inc"

    @property
    def step_sign(self) -> StepSign:
        # The value changes by s * v_i with v_i >= 0, so the step sign decides.
        return StepSign.NEGATIVE if self is Direction.DECREASING else StepSign.POSITIVE

    def admits(self, parent: Fraction, child: Fraction) -> bool:
        return child <= parent if self is Direction.DECREASING else child >= parent


@dataclass(frozen=True)
class MatrixGame:
    M: Matrix

    def __post_init__(self):
        if not isinstance(self.M, Matrix):
            object.__setattr__(self, "M", Matrix(self.M))

    @property
    def m(self) -> int:
        return self.M.rows

    @property
    def n(self) -> int:
        return self.M.cols


@dataclass(frozen=True)
class GameBasicPair:
    R: tuple
    C: tuple
    u: tuple
    v: tuple
    alpha: Fraction
    beta: Fraction

    @property
    def gamma(self) -> Fraction:
        return self.alpha

    @property
    def nonnegative(self) -> bool:
        return all(a >= 0 for a in self.u) and all(a >= 0 for a in self.v)

    @property
    def strictly_positive(self) -> bool:
        return all(a > 0 for a in self.u) and all(a > 0 for a in self.v)


@dataclass(frozen=True)
class GameDirectionPair:
    i: int
    j: int
    du: tuple
    dalpha: Fraction
    dv: tuple
    dbeta: Fraction


@dataclass(frozen=True)
class GameCertificate:
    partition: IndexPartition
    pair: GameBasicPair
    gamma: Fraction
    u: tuple
    v: tuple

    @property
    def r(self) -> int:
        return self.partition.size


@dataclass(frozen=True)
class GameReductionStep:
    removed_row: int
    removed_col: int
    case_tag: CaseTag
    inner_iterations: int
    child_pair: GameBasicPair
    direction: Direction
    sign: StepSign
    achievable: tuple


@dataclass(frozen=True)
class GameLevel:
    k: int
    R: tuple
    C: tuple
    u: tuple
    v: tuple
    gamma: Fraction
    case_tag: CaseTag | None = None
    inner_iterations: int | None = None

    def same_values(self, other: "GameLevel") -> bool:
        return (self.k, self.R, self.C, self.u, self.v, self.gamma) == (
            other.k, other.R, other.C, other.u, other.v, other.gamma,
        )


@dataclass(frozen=True)
class GameTrace:
    m: int
    n: int
    direction: Direction
    levels: tuple
    pivots: tuple

    @property
    def r(self) -> int:
        return len(self.pivots)

    @property
    def gammas(self) -> tuple:
        return tuple(level.gamma for level in self.levels)


def bordered_matrix(game: MatrixGame, R: Sequence[int], C: Sequence[int]) -> Matrix:
    sub = game.M.submatrix(R, C)
    rows = [list(sub.row(p)) + [ONE] for p in range(len(R))]
    rows.append([ONE] * len(C) + [ZERO])
    return Matrix(rows)


def _bordered_solves(game, R, C, primal_rhs, dual_rhs):
    B = bordered_matrix(game, R, C)
    try:
        primal = solve_many(B, primal_rhs)
        dual = solve_many(B.T, dual_rhs)
    except SingularMatrix as exc:
        raise SingularBorderedBasis(f"bordered matrix singular for R={tuple(R)}, C={tuple(C)}") from exc
    return primal, dual


def bordered_pair(game: MatrixGame, R: Sequence[int], C: Sequence[int]) -> GameBasicPair:
    """Solve both bordered systems against ``(0, 1)``."""
    R, C = tuple(R), tuple(C)
    if len(R) != len(C) or not R:
        raise SizeMismatch(f"bordered basis needs |R| = |C| >= 1, got {len(R)}, {len(C)}")
    k = len(R)
    rhs = unit(k + 1, k)
    (p,), (d,) = _bordered_solves(game, R, C, [rhs], [rhs])
    pair = GameBasicPair(R, C, p[:k], d[:k], p[k], d[k])
    if pair.alpha != pair.beta:
        raise IdentityViolated(f"alpha = {pair.alpha} but beta = {pair.beta}")
    return pair


def game_directions(game: MatrixGame, R: Sequence[int], C: Sequence[int], i: int, j: int) -> GameDirectionPair:
    """Bordered solves against ``(e_i, 0)`` and ``(e_j, 0)``, identities checked."""
    R, C = tuple(R), tuple(C)
    if i not in R or j not in C:
        raise SizeMismatch(f"pivot ({i}, {j}) not inside R={R}, C={C}")
    k = len(R)
    pi, pj = R.index(i), C.index(j)
    rhs0 = unit(k + 1, k)
    (p, dp), (d, dd) = _bordered_solves(game, R, C, [rhs0, unit(k + 1, pi)], [rhs0, unit(k + 1, pj)])
    u, v = p[:k], d[:k]
    out = GameDirectionPair(i, j, dp[:k], dp[k], dd[:k], dd[k])
    failures = []
    if out.dalpha != v[pi]:
        failures.append("dalpha = v_i")
    if out.dbeta != u[pj]:
        failures.append("dbeta = u_j")
    if out.du[pj] != out.dv[pi]:
        failures.append("du_j = dv_i")
    if sum(out.du, ZERO) != 0 or sum(out.dv, ZERO) != 0:
        failures.append("e^T du = e^T dv = 0")
    if failures:
        raise IdentityViolated(", ".join(failures))
    return out


def check_game_certificate(game: MatrixGame, cert: GameCertificate) -> CertificateCheck:
    """Check every optimality condition of a bordered-basis certificate."""
    Rp, Cp = cert.partition.rows, cert.partition.cols
    M = game.M
    violations = []
    if not Rp:
        return CertificateCheck(False, ("|R+| = |C+| >= 1",))
    if len(cert.u) != game.n or len(cert.v) != game.m:
        return CertificateCheck(False, ("u, v dimensions",))
    B = bordered_matrix(game, Rp, Cp)
    try:
        solve_many(B, [])
    except SingularMatrix:
        violations.append("bordered matrix nonsingular")
    g = cert.gamma
    Mu = M.matvec(cert.u)
    Mv = M.rmatvec(cert.v)
    if any(Mu[i] + g != 0 for i in Rp):
        violations.append("M_{R+C+} u + e gamma = 0")
    if any(Mv[j] + g != 0 for j in Cp):
        violations.append("M_{R+C+}^T v + e gamma = 0")
    if sum(cert.u, ZERO) != 1 or sum(cert.v, ZERO) != 1:
        violations.append("e^T u = e^T v = 1")
    if any(Mu[i] + g < 0 for i in range(game.m) if i not in Rp):
        violations.append("M_{R0C+} u + e gamma >= 0")
    if any(Mv[j] + g > 0 for j in range(game.n) if j not in Cp):
        violations.append("M_{R+C0}^T v + e gamma <= 0")
    if any(a < 0 for a in cert.u) or any(a < 0 for a in cert.v):
        violations.append("u >= 0, v >= 0")
    if any(cert.u[j] != 0 for j in range(game.n) if j not in Cp) or any(
        cert.v[i] != 0 for i in range(game.m) if i not in Rp
    ):
        violations.append("u_{C0} = 0, v_{R0} = 0")
    pair = cert.pair
    if (pair.R, pair.C) != (Rp, Cp) or pair.gamma != g or pair.u != tuple(cert.u[j] for j in Cp) or pair.v != tuple(
        cert.v[i] for i in Rp
    ):
        violations.append("pair consistent with padded u, v")
    return CertificateCheck(not violations, tuple(violations))


def certificate_from_sets(game: MatrixGame, R: Sequence[int], C: Sequence[int]) -> GameCertificate:
    part = IndexPartition(tuple(R), tuple(C))
    pair = bordered_pair(game, part.rows, part.cols)
    u = [ZERO] * game.n
    v = [ZERO] * game.m
    for j, a in zip(part.cols, pair.u):
        u[j] = a
    for i, a in zip(part.rows, pair.v):
        v[i] = a
    return GameCertificate(part, pair, pair.gamma, tuple(u), tuple(v))


def shifted_lp(game: MatrixGame) -> tuple[CanonicalLP, Fraction]:
    """``min e^T x  s.t. (M + sigma) x >= e, x >= 0`` with every entry of M + sigma >= 1."""
    sigma = 1 + max(abs(a) for row in game.M for a in row)
    A = Matrix([[a + sigma for a in row] for row in game.M])
    return CanonicalLP(A, [1] * game.m, [1] * game.n), sigma


def _assemble_from_lp(game: MatrixGame) -> GameCertificate:
    lp, sigma = shifted_lp(game)
    outcome = solve_canonical(lp)
    if outcome.status is not Status.OPTIMAL:
        raise InternalInvariant(f"shifted game LP reported {outcome.status}")
    cert = outcome.certificate
    z = cert.objective
    cand = certificate_from_sets(game, cert.partition.rows, cert.partition.cols)
    # Scaled LP solution and the bordered solve must agree exactly.
    if cand.gamma != sigma - 1 / z or cand.pair.u != tuple(a / z for a in cert.pair.x) or cand.pair.v != tuple(
        a / z for a in cert.pair.y
    ):
        raise InternalInvariant("bordered solve disagrees with the scaled LP solution")
    return cand


def solve_game(game: MatrixGame, fallback_cap: int = 6) -> GameCertificate:
    """Optimal bordered basis via the shifted LP, with exhaustive search as fallback."""
    try:
        cert = _assemble_from_lp(game)
        if check_game_certificate(game, cert):
            return cert
        log.warning("LP-assembled game certificate failed validation; using exhaustive search")
    except (InternalInvariant, SingularBorderedBasis) as exc:
        log.warning("game certificate assembly failed (%s); using exhaustive search", exc)
    if max(game.m, game.n) <= fallback_cap:
        from .oracle import enumerate_game_bases

        found = enumerate_game_bases(game, cap=fallback_cap)
        if found:
            return found[0]
    raise CertificateAssemblyFailed("no valid bordered-basis certificate found")


def game_reduce_once(
    game: MatrixGame,
    R: Sequence[int],
    C: Sequence[int],
    pair: GameBasicPair,
    direction: Direction,
) -> GameReductionStep:
    """Shrink a nonnegative bordered basis by one, moving the value in ``direction``."""
    R, C = tuple(R), tuple(C)
    k = len(R)
    if k < 2 or len(C) != k:
        raise SizeMismatch(f"game reduction needs |R| = |C| >= 2, got {len(R)}, {len(C)}")
    if pair.alpha != pair.beta:
        raise InvalidCertificate("pair must have alpha = beta")
    B = bordered_matrix(game, R, C)
    try:
        solve_many(B, [])
    except SingularMatrix as exc:
        raise SingularBorderedBasis(f"bordered matrix singular for R={R}, C={C}") from exc
    BT = B.T
    core = reduction_core(
        pair.u,
        pair.v,
        lambda p: solve_many(B, [unit(k + 1, p)])[0][:k],
        lambda p: solve_many(BT, [unit(k + 1, p)])[0][:k],
        pair.gamma,
        direction.step_sign,
    )
    R1 = tuple(a for p, a in enumerate(R) if p != core.i)
    C1 = tuple(a for p, a in enumerate(C) if p != core.j)
    child = bordered_pair(game, R1, C1)
    if child.u != core.x_child or child.v != core.y_child or child.gamma != core.candidates[-1]:
        raise InternalInvariant("fresh bordered solve disagrees with the stepped pair")
    achievable = tuple(d for d in Direction if d.admits(pair.gamma, child.gamma))
    if direction not in achievable:
        raise DirectionUnavailable(
            f"{core.case_tag.value} reduction moved gamma {pair.gamma} -> {child.gamma}",
            achievable,
        )
    return GameReductionStep(
        removed_row=R[core.i],
        removed_col=C[core.j],
        case_tag=core.case_tag,
        inner_iterations=core.inner_iterations,
        child_pair=child,
        direction=direction,
        sign=core.sign,
        achievable=achievable,
    )


def _level(k: int, pair: GameBasicPair, step: GameReductionStep | None = None) -> GameLevel:
    return GameLevel(
        k, pair.R, pair.C, pair.u, pair.v, pair.gamma,
        step.case_tag if step else None,
        step.inner_iterations if step else None,
    )


def game_decompose(game: MatrixGame, cert: GameCertificate, direction: Direction) -> GameTrace:
    """Forward trace of nested optimal bordered bases with monotone values."""
    report = check_game_certificate(game, cert)
    if not report:
        raise InvalidCertificate(f"game certificate fails: {report.violations}")
    pair = cert.pair
    backward, removed = [], []
    for k in range(cert.r, 1, -1):
        step = game_reduce_once(game, pair.R, pair.C, pair, direction)
        backward.append(_level(k, pair, step))
        removed.append((step.removed_row, step.removed_col))
        pair = step.child_pair
    backward.append(_level(1, pair))
    removed.append((pair.R[0], pair.C[0]))
    levels = tuple(reversed(backward))
    for lev in levels:
        if not (all(a >= 0 for a in lev.u) and all(a >= 0 for a in lev.v)):
            raise InternalInvariant(f"level {lev.k} has a negative component")
        if sum(lev.u, ZERO) != 1 or sum(lev.v, ZERO) != 1:
            raise InternalInvariant(f"level {lev.k} leaves the unit simplex")
    g = [lev.gamma for lev in levels]
    ok = all(a <= b for a, b in zip(g, g[1:])) if direction is Direction.DECREASING else all(
        a >= b for a, b in zip(g, g[1:])
    )
    if not ok or g[-1] != cert.gamma:
        raise InternalInvariant(f"gamma sequence {g} not monotone toward {cert.gamma}")
    return GameTrace(game.m, game.n, direction, levels, tuple(reversed(removed)))
