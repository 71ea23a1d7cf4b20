"""Restrictions, self-similarity checks, and axis-perpendicular shadows."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .core import Position
from .errors import BadRequestError
from .fractal import (
    DEFAULT_BUDGET_EXPONENT,
    IterationSpec,
    PointSet,
    check_budget,
    iterate_recursive,
    stream_points,
)


@dataclass(frozen=True)
class ShadowGrid:
    """Hit counts of a point set projected along one coordinate axis.

    ``counts`` covers the full (d-1)-dimensional grid [0, 2**n)^(d-1), cells
    with no hits included.  The total count equals the source cardinality.
    """

    d_reduced: int
    n: int
    dropped_axis: int
    counts: dict[tuple[int, ...], int]

    def __post_init__(self) -> None:
        expected_cells = 1 << (self.n * self.d_reduced)
        if len(self.counts) != expected_cells:
            raise ValueError(
                f"grid has {len(self.counts)} cells, expected {expected_cells}")

    def total(self) -> int:
        return sum(self.counts.values())

    def all_ones(self) -> bool:
        return all(count == 1 for count in self.counts.values())


def restrict(ps: PointSet, m: int) -> PointSet:
    """The subset of ``ps`` with all coordinates below 2**m.

    Keeping a subsequence preserves the canonical order.
    """
    if m < 0:
        raise BadRequestError(f"restriction exponent must be nonnegative, got {m}")
    if m > ps.n:
        raise BadRequestError(
            f"cannot restrict to exponent {m} above the bounding exponent {ps.n}")
    bound = 1 << m
    kept = tuple(p for p in ps.points if all(c < bound for c in p))
    return PointSet(d=ps.d, n=m, points=kept)


def shadow(spec: IterationSpec, axis: int,
           budget_exponent: int = DEFAULT_BUDGET_EXPONENT) -> ShadowGrid:
    """Project iteration n along ``axis`` and count hits per grid cell.

    Streams the point set and tallies, so the measurement is independent of
    the claim that every cell is hit exactly once.  The (d-1)-grid is
    materialized, hence the budget check on n*(d-1).
    """
    if not 0 <= axis < spec.d:
        raise BadRequestError(
            f"axis {axis} out of range for dimension {spec.d}")
    check_budget(spec.n * (spec.d - 1), budget_exponent,
                 f"shadow grid (d={spec.d}, n={spec.n})")
    size = 1 << spec.n
    counts: dict[tuple[int, ...], int] = {
        cell: 0 for cell in product(range(size), repeat=spec.d - 1)
    }
    for point in stream_points(spec):
        counts[point[:axis] + point[axis + 1:]] += 1
    return ShadowGrid(d_reduced=spec.d - 1, n=spec.n, dropped_axis=axis,
                      counts=counts)


def project_pointset(ps: PointSet, axis: int) -> dict[tuple[int, ...], int]:
    """Naive projection of a materialized set; the oracle ``shadow`` is tested against."""
    if not 0 <= axis < ps.d:
        raise BadRequestError(f"axis {axis} out of range for dimension {ps.d}")
    counts: dict[tuple[int, ...], int] = {}
    for point in ps.points:
        cell = point[:axis] + point[axis + 1:]
        counts[cell] = counts.get(cell, 0) + 1
    return counts


def verify_self_similarity(spec: IterationSpec,
                           budget_exponent: int = DEFAULT_BUDGET_EXPONENT) -> bool:
    """Check that restricting iteration n to exponent n-1 gives iteration n-1.

    The recursion keeps a zero-shifted copy of the previous iteration, so the
    restriction must reproduce it exactly.
    """
    if spec.n < 2:
        raise BadRequestError("self-similarity needs n of at least 2")
    larger = iterate_recursive(spec, budget_exponent)
    smaller = iterate_recursive(IterationSpec(spec.d, spec.n - 1), budget_exponent)
    return restrict(larger, spec.n - 1).points == smaller.points
