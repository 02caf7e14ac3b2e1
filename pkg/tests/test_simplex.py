import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shortpivot.errors import PartitionRepairFailed
from shortpivot.model import CanonicalLP, check_certificate, generate_instance
from shortpivot.oracle import enumerate_certificates
from shortpivot.simplex import StandardFormTableau, Status, extract_partition, solve_canonical


def test_two_by_two_worked_instance():
    out = solve_canonical(CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3]))
    assert out.status is Status.OPTIMAL
    cert = out.certificate
    assert cert.objective == 6
    assert (cert.partition.rows, cert.partition.cols) == ((0, 1), (0, 1))
    assert (cert.pair.x, cert.pair.y) == ((1, 1), (1, 1))


def test_origin_optimal_gives_empty_partition():
    out = solve_canonical(CanonicalLP([[1]], [-1], [1]))
    assert out.status is Status.OPTIMAL
    assert out.certificate.r == 0
    assert out.objective == 0
    assert out.pivot_log == []


def test_primal_infeasible():
    assert solve_canonical(CanonicalLP([[-1]], [1], [1])).status is Status.PRIMAL_INFEASIBLE


def test_unbounded():
    # x >= 1 with the cost pushing x upward forever.
    assert solve_canonical(CanonicalLP([[1]], [1], [-1])).status is Status.DUAL_INFEASIBLE


def test_three_by_two_one_active_row():
    lp = CanonicalLP([[1, 1], [1, 0], [0, 1]], [2, -5, -5], [1, 2])
    out = solve_canonical(lp)
    cert = out.certificate
    assert out.status is Status.OPTIMAL
    assert cert.objective == 2
    assert cert.partition.rows == (0,) and cert.partition.cols == (0,)
    assert check_certificate(lp, cert).ok


def test_pivot_log_format():
    out = solve_canonical(CanonicalLP([[2, 1], [1, 2]], [3, 3], [3, 3]))
    assert out.pivot_log
    for line in out.pivot_log:
        fields = dict(part.split("=") for part in line.split())
        assert set(fields) == {"phase", "enter", "leave", "objective"}
        assert fields["phase"] in ("1", "2")


def test_extract_partition_rejects_artificial():
    tab = StandardFormTableau(m=1, n=1, rows=[[1, -1, 1, 1]], basis=[2], n_artificial=1)
    with pytest.raises(PartitionRepairFailed):
        extract_partition(tab)


def test_extract_partition_all_slacks():
    tab = StandardFormTableau(m=2, n=1, rows=[], basis=[1, 2])
    part = extract_partition(tab)
    assert part.rows == () and part.cols == ()


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_generated_instances_solve_to_valid_certificates(m, n, seed):
    lp = generate_instance(m, n, seed)
    out = solve_canonical(lp)
    assert out.status is Status.OPTIMAL
    cert = out.certificate
    assert check_certificate(lp, cert).ok
    assert len(cert.partition.rows) == len(cert.partition.cols) <= min(m, n)
    # Counting identity on the final basis.
    slacks = sum(1 for c in out.tableau.basis if n <= c < n + m)
    assert m == slacks + cert.r
    assert len(set(out.bases)) == len(out.bases)
    x = cert.pair.padded_x(n)
    y = cert.pair.padded_y(m)
    assert cert.objective == sum(a * b for a, b in zip(lp.c, x)) == sum(a * b for a, b in zip(lp.b, y))


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 4).flatmap(
        lambda m: st.integers(1, 4).flatmap(
            lambda n: st.tuples(
                st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m),
                st.lists(st.integers(-3, 3), min_size=m, max_size=m),
                st.lists(st.integers(-3, 3), min_size=n, max_size=n),
            )
        )
    )
)
def test_arbitrary_instances_status_is_consistent(data):
    A, b, c = data
    lp = CanonicalLP(A, b, c)
    out = solve_canonical(lp)
    # Brute force over certificates decides whether an optimum exists.
    certs = enumerate_certificates(lp)
    if out.status is Status.OPTIMAL:
        assert certs and out.objective == min(c.objective for c in certs)
    else:
        assert not certs
    assert len(set(out.bases)) == len(out.bases)
