from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortpivot.errors import EmptySelection, IndexOutOfRange, SingularBasis, SizeMismatch
from shortpivot.model import (
    BasicPair,
    CanonicalLP,
    IndexPartition,
    PartitionCertificate,
    basic_pair,
    certificate_from_sets,
    check_certificate,
    generate_instance,
    is_dual_feasible,
    is_primal_feasible,
    subproblem,
)

from oracles import cramer_solve, transpose


@pytest.fixture
def lp22():
    return CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3])


def test_dimension_mismatch_rejected():
    with pytest.raises(SizeMismatch):
        CanonicalLP([[1, 2]], [1, 2], [1, 1])


def test_partition_requires_equal_sizes():
    with pytest.raises(SizeMismatch):
        IndexPartition((0, 1), (0,))
    with pytest.raises(SizeMismatch):
        IndexPartition((0, 0), (0, 1))


def test_valid_certificate(lp22):
    # Both 2x2 systems solved by hand via Cramer's rule.
    assert cramer_solve([[2, 1], [1, 2]], [3, 3]) == (1, 1)
    assert cramer_solve(transpose([[2, 1], [1, 2]]), [3, 3]) == (1, 1)
    cert = PartitionCertificate(IndexPartition((0, 1), (0, 1)), BasicPair((0, 1), (0, 1), (F(1), F(1)), (F(1), F(1))), F(6))
    assert check_certificate(lp22, cert).ok


def test_sign_flip_reports_nonnegativity(lp22):
    cert = PartitionCertificate(IndexPartition((0, 1), (0, 1)), BasicPair((0, 1), (0, 1), (F(1), F(-1)), (F(1), F(1))), F(6))
    report = check_certificate(lp22, cert)
    assert not report
    assert "x >= 0" in report.violations


def test_empty_certificate_for_origin_optimal():
    lp = CanonicalLP([[1, -2], [3, 4]], [-1, 0], [2, 5])
    cert = PartitionCertificate(IndexPartition(), BasicPair((), (), (), ()), F(0))
    assert check_certificate(lp, cert).ok


def test_empty_certificate_rejected_when_origin_infeasible(lp22):
    report = check_certificate(lp22, certificate_from_sets(lp22, (), ()))
    assert report.violations == ("A_{R0C+} x >= b_{R0}",)


def test_check_certificate_index_out_of_range(lp22):
    cert = PartitionCertificate(IndexPartition((5,), (0,)), BasicPair((5,), (0,), (F(1),), (F(1),)), F(0))
    with pytest.raises(IndexOutOfRange):
        check_certificate(lp22, cert)


def test_subproblem(lp22):
    assert subproblem(lp22, (0, 1), (0, 1)).same_data(lp22)
    sub = subproblem(lp22, (1,), (0,))
    assert (sub.A.tolist(), sub.b, sub.c) == ([[1]], (3,), (3,))
    sub = subproblem(lp22, (0,), (1,))
    assert (sub.A.tolist(), sub.b, sub.c) == ([[1]], (3,), (3,))
    with pytest.raises(EmptySelection):
        subproblem(lp22, (), (0,))
    with pytest.raises(IndexOutOfRange):
        subproblem(lp22, (2,), (0,))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subproblem_composes(data):
    seed = data.draw(st.integers(0, 10_000))
    lp = generate_instance(5, 6, seed)
    R = data.draw(st.lists(st.integers(0, 4), min_size=1, max_size=5, unique=True))
    C = data.draw(st.lists(st.integers(0, 5), min_size=1, max_size=6, unique=True))
    R2 = data.draw(st.lists(st.integers(0, len(R) - 1), min_size=1, max_size=len(R), unique=True))
    C2 = data.draw(st.lists(st.integers(0, len(C) - 1), min_size=1, max_size=len(C), unique=True))
    twice = subproblem(subproblem(lp, R, C), R2, C2)
    once = subproblem(lp, [R[p] for p in R2], [C[p] for p in C2])
    assert twice.same_data(once)


def test_basic_pair(lp22):
    pair = basic_pair(lp22, (0, 1), (0, 1))
    assert (pair.x, pair.y) == ((1, 1), (1, 1))
    pair = basic_pair(lp22, (1,), (0,))
    assert (pair.x, pair.y) == ((3,), (3,))
    singular = CanonicalLP([[1, 1, 0], [2, 2, 1]], [1, 1], [1, 1, 1])
    with pytest.raises(SingularBasis):
        basic_pair(singular, (0, 1), (0, 1))
    with pytest.raises(SizeMismatch):
        basic_pair(lp22, (0, 1), (0,))


def test_generator_deterministic():
    assert generate_instance(4, 3, 11) == generate_instance(4, 3, 11)
    assert generate_instance(4, 3, 11) != generate_instance(4, 3, 12)


def test_generator_one_by_one_witness():
    for seed in range(50):
        lp = generate_instance(1, 1, seed)
        x, = lp.x_star
        assert x >= 0 and lp.A[0, 0] * x >= lp.b[0]


def test_generator_witnesses_feasible_sweep():
    import random

    rng = random.Random(0)
    for seed in range(500):
        lp = generate_instance(rng.randint(1, 8), rng.randint(1, 8), seed)
        assert is_primal_feasible(lp, lp.x_star)
        assert is_dual_feasible(lp, lp.y_star)
        assert all(-9 <= a <= 9 for row in lp.A for a in row)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_valid_certificates_have_equal_objectives(m, n, seed):
    import itertools

    lp = generate_instance(m, n, seed)
    for k in range(min(m, n) + 1):
        for R in itertools.combinations(range(m), k):
            for C in itertools.combinations(range(n), k):
                try:
                    cert = certificate_from_sets(lp, R, C)
                except SingularBasis:
                    continue
                if check_certificate(lp, cert):
                    x = cert.pair.padded_x(n)
                    y = cert.pair.padded_y(m)
                    assert sum(a * b for a, b in zip(lp.c, x)) == sum(a * b for a, b in zip(lp.b, y))
