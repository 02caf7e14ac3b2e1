"""Brute-force ground truth for tiny instances.

Nothing here calls the simplex solver or the reduction code; the searches
only use exact solves and the certificate checkers, so they can judge the
output of both.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .algebra import is_nonsingular
from .errors import InstanceTooLarge, InternalInvariant, SingularMatrix
from .game import GameCertificate, MatrixGame, check_game_certificate
from .game import certificate_from_sets as game_certificate_from_sets
from .model import (
    CanonicalLP,
    PartitionCertificate,
    basic_pair,
    certificate_from_sets,
    check_certificate,
)

DEFAULT_CAP = 4
HARD_CAP = 6


def _check_cap(m: int, n: int, cap: int) -> None:
    if cap > HARD_CAP:
        raise InstanceTooLarge(f"cap {cap} exceeds the hard limit {HARD_CAP}")
    if max(m, n) > cap:
        raise InstanceTooLarge(f"{m}x{n} instance exceeds enumeration cap {cap}")


def _square_pairs(m: int, n: int, min_size: int = 0):
    for k in range(min_size, min(m, n) + 1):
        for R in itertools.combinations(range(m), k):
            for C in itertools.combinations(range(n), k):
                yield R, C


def enumerate_certificates(lp: CanonicalLP, cap: int = DEFAULT_CAP) -> list[PartitionCertificate]:
    """Every equal-size ``(R, C)``, the empty one included, that certifies optimality."""
    _check_cap(lp.m, lp.n, cap)
    found = []
    for R, C in _square_pairs(lp.m, lp.n):
        if R and not is_nonsingular(lp.A.submatrix(R, C)):
            continue
        cert = certificate_from_sets(lp, R, C)
        if check_certificate(lp, cert):
            found.append(cert)
    return found


def enumerate_short_sequences(lp: CanonicalLP, cap: int = DEFAULT_CAP) -> list[tuple]:
    """All ordered pivot lists whose nested bases stay nonnegative and end optimal.

    Depth-first; a prefix is dropped as soon as its newest basis is singular
    or has a negative component. Pivots are 0-based ``(row, col)`` pairs.
    """
    _check_cap(lp.m, lp.n, cap)
    level_ok: dict[tuple, bool] = {}
    final_ok: dict[tuple, bool] = {}
    out: list[tuple] = []

    def admissible(R: tuple, C: tuple) -> bool:
        key = (R, C)
        if key not in level_ok:
            try:
                pair = basic_pair(lp, R, C)
            except SingularMatrix:
                level_ok[key] = False
            else:
                level_ok[key] = pair.nonnegative
        return level_ok[key]

    def optimal(R: tuple, C: tuple) -> bool:
        key = (R, C)
        if key not in final_ok:
            final_ok[key] = bool(check_certificate(lp, certificate_from_sets(lp, R, C)))
        return final_ok[key]

    def walk(prefix: list, rows: frozenset, cols: frozenset) -> None:
        R, C = tuple(sorted(rows)), tuple(sorted(cols))
        if optimal(R, C):
            out.append(tuple(prefix))
        for i in range(lp.m):
            if i in rows:
                continue
            for j in range(lp.n):
                if j in cols:
                    continue
                R1, C1 = tuple(sorted(rows | {i})), tuple(sorted(cols | {j}))
                if admissible(R1, C1):
                    prefix.append((i, j))
                    walk(prefix, rows | {i}, cols | {j})
                    prefix.pop()

    walk([], frozenset(), frozenset())
    return out


def enumerate_game_bases(game: MatrixGame, cap: int = DEFAULT_CAP) -> list[GameCertificate]:
    """Every bordered basis whose pair satisfies all optimality conditions."""
    _check_cap(game.m, game.n, cap)
    found = []
    for R, C in _square_pairs(game.m, game.n, min_size=1):
        try:
            cert = game_certificate_from_sets(game, R, C)
        except SingularMatrix:
            continue
        if check_game_certificate(game, cert):
            found.append(cert)
    if len({c.gamma for c in found}) > 1:
        raise InternalInvariant(f"optimal bordered bases disagree on the value: {sorted({c.gamma for c in found})}")
    return found


@dataclass
class EnumerationReport:
    instance_id: str
    certificates: list = field(default_factory=list)
    sequences: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def counts(self) -> dict:
        lengths = [len(s) for s in self.sequences]
        return {
            "certificates": len(self.certificates),
            "sequences": len(self.sequences),
            "min_length": min(lengths) if lengths else None,
            "max_length": max(lengths) if lengths else None,
        }


def enumerate_lp(lp: CanonicalLP, cap: int = DEFAULT_CAP, instance_id: str = "") -> EnumerationReport:
    start = time.perf_counter()
    certs = enumerate_certificates(lp, cap)
    seqs = enumerate_short_sequences(lp, cap)
    return EnumerationReport(instance_id, certs, seqs, time.perf_counter() - start)
