"""Equivalence harness for the two demihypercube constructions.

Machine-checks, at desk scale, that the copy-and-shift recursion and the
nim-sum filter generate identical point sets, and that the high/low
decomposition used to prove it holds pointwise.  This is exhaustive testing,
not deduction: every cell within budget is enumerated in full.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import product, zip_longest

from .core import Position, nim_sum
from .fractal import (
    IterationSpec,
    check_budget,
    generate_filtered,
    iterate_recursive,
)

# The default sweep stops at 2**16 materialized points per cell, which keeps
# the full run in the seconds range; callers can raise it.
DEFAULT_SWEEP_EXPONENT = 16


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of comparing both generators for one (d, n) cell."""

    d: int
    n: int
    equal: bool
    cardinality_recursive: int
    cardinality_filtered: int
    expected_cardinality: int
    elapsed_seconds: float
    first_discrepancy: tuple[Position | None, Position | None] | None = None

    def __post_init__(self) -> None:
        if self.equal and self.first_discrepancy is not None:
            raise ValueError("equal reports cannot carry a discrepancy")
        if self.equal and self.cardinality_recursive != self.cardinality_filtered:
            raise ValueError("equal reports cannot have differing cardinalities")


def first_difference(
    a: tuple[Position, ...], b: tuple[Position, ...],
) -> tuple[Position | None, Position | None] | None:
    """First index where two sorted sequences differ, as an element pair.

    None on the exhausted side when one sequence is a prefix of the other;
    None overall when they are identical.
    """
    for x, y in zip_longest(a, b, fillvalue=None):
        if x != y:
            return (x, y)
    return None


def verify_theorem(spec: IterationSpec,
                   budget_exponent: int = DEFAULT_SWEEP_EXPONENT) -> VerificationReport:
    """Compare both generators for one cell as sorted sequences.

    The budget governs the materialized point count n*(d-1); the filter
    route's larger scan cost (n*d candidates) is accepted once the
    materialized size fits, since it is transient.
    """
    check_budget(spec.n * (spec.d - 1), budget_exponent,
                 f"verification cell (d={spec.d}, n={spec.n})")
    started = time.perf_counter()
    recursive = iterate_recursive(spec, budget_exponent)
    filtered = generate_filtered(spec, budget_exponent=spec.n * spec.d)
    discrepancy = first_difference(recursive.points, filtered.points)
    elapsed = time.perf_counter() - started
    return VerificationReport(
        d=spec.d,
        n=spec.n,
        equal=discrepancy is None,
        cardinality_recursive=len(recursive),
        cardinality_filtered=len(filtered),
        expected_cardinality=1 << (spec.n * (spec.d - 1)),
        elapsed_seconds=elapsed,
        first_discrepancy=discrepancy,
    )


def verify_inductive_step(spec: IterationSpec,
                          budget_exponent: int = DEFAULT_SWEEP_EXPONENT) -> bool:
    """Pointwise check of the high/low decomposition at level n.

    For every x in [0, 2**(n+1))^d: x has nim-sum zero iff the high parts
    (the 2**n bits) have an even number of nonzero entries and the low parts
    (the remaining bits) have nim-sum zero.  Enumerates 2**((n+1)*d)
    candidates, hence that budget check.
    """
    check_budget((spec.n + 1) * spec.d, budget_exponent,
                 f"inductive step (d={spec.d}, n={spec.n})")
    bit = 1 << spec.n
    size = bit << 1
    for x in product(range(size), repeat=spec.d):
        in_next_restriction = nim_sum(x) == 0
        high_even = sum(1 for c in x if c & bit) % 2 == 0
        low = tuple(c & (bit - 1) for c in x)
        if in_next_restriction != (high_even and nim_sum(low) == 0):
            return False
    return True


def sweep_theorem(max_d: int = 5, max_n: int = 4,
                  budget_exponent: int = DEFAULT_SWEEP_EXPONENT,
                  ) -> list[VerificationReport]:
    """Verify every (d, n) cell with d <= max_d, n <= max_n within budget.

    Cells whose materialized size n*(d-1) exceeds the budget are skipped;
    reports come back in (d, n) order.
    """
    reports = []
    for d in range(1, max_d + 1):
        for n in range(1, max_n + 1):
            if n * (d - 1) <= budget_exponent:
                reports.append(verify_theorem(IterationSpec(d, n), budget_exponent))
    return reports
