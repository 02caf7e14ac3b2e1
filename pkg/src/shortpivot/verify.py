"""Seeded verification sweeps: solve, decompose, replay and cross-check."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .decompose import (
    DecompositionTrace,
    StepSign,
    decompose,
    is_optimal_trace,
    replay,
)
from .errors import ReplayError, ShortPivotError
from .model import CanonicalLP, check_certificate, generate_instance
from .oracle import enumerate_certificates, enumerate_short_sequences
from .simplex import Status, solve_canonical


@dataclass
class InstanceResult:
    instance_id: str
    m: int
    n: int
    status: Status | None = None
    r: int | None = None
    failures: list = field(default_factory=list)
    case_tags: Counter = field(default_factory=Counter)
    inner_iterations: Counter = field(default_factory=Counter)
    trace: DecompositionTrace | None = None

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_instance(
    lp: CanonicalLP,
    cap: int = 4,
    prefer: StepSign = StepSign.POSITIVE,
    instance_id: str = "",
) -> InstanceResult:
    """Run the whole pipeline on one instance and collect every failed check."""
    res = InstanceResult(instance_id, lp.m, lp.n)
    fail = res.failures.append
    small = max(lp.m, lp.n) <= cap
    try:
        outcome = solve_canonical(lp)
        res.status = outcome.status
        if outcome.status is not Status.OPTIMAL:
            if lp.x_star is not None and lp.y_star is not None:
                fail(f"solver reported {outcome.status.value} on a feasible-by-construction instance")
            if small and enumerate_certificates(lp, cap):
                fail("solver reported no optimum but certificates exist")
            return res
        cert = outcome.certificate
        if not check_certificate(lp, cert):
            fail("simplex certificate fails the optimality check")
        res.r = cert.r
        if cert.r > min(lp.m, lp.n):
            fail("r exceeds min(m, n)")
        trace = decompose(lp, cert, prefer)
        res.trace = trace
        for lev in trace.levels:
            if lev.case_tag is not None:
                res.case_tags[lev.case_tag.value] += 1
                res.inner_iterations[lev.inner_iterations] += 1
        if not replay(lp, trace.pivots).same_values(trace):
            fail("replay does not reproduce the decomposition")
        if not is_optimal_trace(lp, trace):
            fail("final level is not optimal for the full pair")
        if small:
            certs = enumerate_certificates(lp, cap)
            if not certs:
                fail("enumeration found no certificate")
            elif min(c.objective for c in certs) != cert.objective:
                fail("simplex objective differs from the enumerated optimum")
            seqs = enumerate_short_sequences(lp, cap)
            if not seqs:
                fail("no short sequence enumerated")
            elif trace.pivots not in set(seqs):
                fail("decomposition pivots missing from the enumeration")
    except ShortPivotError as exc:
        fail(f"{type(exc).__name__}: {exc}")
    return res


def verify_trace(lp: CanonicalLP, trace: DecompositionTrace) -> list[str]:
    """Check a stored trace against its instance; returns the failures."""
    failures = []
    if (trace.m, trace.n) != (lp.m, lp.n):
        return [f"trace is {trace.m}x{trace.n} but instance is {lp.m}x{lp.n}"]
    try:
        fresh = replay(lp, trace.pivots)
    except (ReplayError, ShortPivotError) as exc:
        return [f"{type(exc).__name__}: {exc}"]
    if not fresh.same_values(trace):
        failures.append("stored levels differ from a fresh replay")
    if not is_optimal_trace(lp, fresh):
        failures.append("final level is not optimal for the full pair")
    return failures


@dataclass
class SweepSummary:
    results: list

    @property
    def passed(self) -> int:
        return sum(r.ok for r in self.results)

    @property
    def failed(self) -> list:
        return [r for r in self.results if not r.ok]

    @property
    def case_tags(self) -> Counter:
        out = Counter()
        for r in self.results:
            out.update(r.case_tags)
        return out

    @property
    def inner_iterations(self) -> Counter:
        out = Counter()
        for r in self.results:
            out.update(r.inner_iterations)
        return out

    @property
    def max_r(self) -> int:
        return max((r.r for r in self.results if r.r is not None), default=0)

    def as_dict(self) -> dict:
        return {
            "instances": len(self.results),
            "passed": self.passed,
            "failed": [{"id": r.instance_id, "failures": r.failures} for r in self.failed],
            "case_tags": dict(sorted(self.case_tags.items())),
            "inner_iterations": {str(k): v for k, v in sorted(self.inner_iterations.items())},
            "max_r": self.max_r,
        }


def sweep_instances(count: int, max_m: int, max_n: int, seed: int = 0):
    """Yield ``count`` feasible-pair instances with random sizes up to the maxima."""
    for k in range(count):
        s = seed + k
        rng = random.Random(f"size-{s}")
        yield generate_instance(rng.randint(1, max_m), rng.randint(1, max_n), s)


def run_sweep(
    count: int,
    max_m: int,
    max_n: int,
    seed: int = 0,
    cap: int = 4,
    prefer: StepSign = StepSign.POSITIVE,
) -> SweepSummary:
    results = [
        verify_instance(lp, cap, prefer, instance_id=f"seed-{lp.seed}")
        for lp in sweep_instances(count, max_m, max_n, seed)
    ]
    return SweepSummary(results)
