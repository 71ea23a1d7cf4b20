import pytest

from nimcube.errors import BudgetExceededError
from nimcube.fractal import IterationSpec
from nimcube.verify import (
    VerificationReport,
    first_difference,
    sweep_theorem,
    verify_inductive_step,
    verify_theorem,
)


def test_verify_theorem_first_iteration():
    report = verify_theorem(IterationSpec(3, 1))
    assert report.equal
    assert report.cardinality_recursive == 4
    assert report.cardinality_filtered == 4
    assert report.expected_cardinality == 4
    assert report.first_discrepancy is None


def test_verify_theorem_trivial_dimension():
    report = verify_theorem(IterationSpec(1, 4))
    assert report.equal
    assert report.cardinality_recursive == 1


def test_verify_theorem_larger_cell():
    report = verify_theorem(IterationSpec(5, 3))
    assert report.equal
    assert report.cardinality_recursive == 4096
    assert report.expected_cardinality == 4096


def test_verify_theorem_budget():
    with pytest.raises(BudgetExceededError):
        verify_theorem(IterationSpec(5, 3), budget_exponent=11)


def test_first_difference_reports_the_first_mismatch():
    a = ((0, 0), (1, 1), (2, 2))
    assert first_difference(a, a) is None
    assert first_difference(a, ((0, 0), (1, 2), (2, 2))) == ((1, 1), (1, 2))
    assert first_difference(a, ((0, 0), (1, 1))) == ((2, 2), None)
    assert first_difference(a[:2], a) == (None, (2, 2))


def test_report_consistency_guards():
    with pytest.raises(ValueError):
        VerificationReport(d=2, n=1, equal=True, cardinality_recursive=2,
                           cardinality_filtered=2, expected_cardinality=2,
                           elapsed_seconds=0.0,
                           first_discrepancy=((0, 0), (1, 1)))
    with pytest.raises(ValueError):
        VerificationReport(d=2, n=1, equal=True, cardinality_recursive=2,
                           cardinality_filtered=3, expected_cardinality=2,
                           elapsed_seconds=0.0)


@pytest.mark.parametrize("d,n", [(d, n) for d in (2, 3, 4) for n in (1, 2, 3)])
def test_inductive_step_small_cells(d, n):
    assert verify_inductive_step(IterationSpec(d, n))


def test_inductive_step_example_split():
    # The level-2 split of (7,3,5) is (4,0,4) + (3,3,1): high part has even
    # weight but the low part is not a zero-nim-sum point, so the point is
    # outside the third restriction.
    from nimcube.core import nim_sum

    x = (7, 3, 5)
    high = tuple(4 if c >= 4 else 0 for c in x)
    low = tuple(c - h for c, h in zip(x, high))
    assert high == (4, 0, 4)
    assert low == (3, 3, 1)
    assert sum(1 for h in high if h) % 2 == 0
    assert nim_sum(low) != 0
    assert nim_sum(x) != 0


def test_inductive_step_budget():
    with pytest.raises(BudgetExceededError):
        verify_inductive_step(IterationSpec(4, 3), budget_exponent=15)


def test_sweep_covers_expected_cells_and_passes():
    reports = sweep_theorem(max_d=4, max_n=3, budget_exponent=9)
    cells = [(r.d, r.n) for r in reports]
    assert cells == [(d, n) for d in range(1, 5) for n in range(1, 4)
                     if n * (d - 1) <= 9]
    for report in reports:
        assert report.equal
        assert report.cardinality_recursive == report.expected_cardinality
