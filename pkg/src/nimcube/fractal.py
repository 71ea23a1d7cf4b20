"""Iterations of the discrete Sierpinski demihypercube.

Three independent routes produce the same point set and are cross-checked in
the test suite: the literal copy-and-shift recursion, exhaustive nim-sum
filtering of the bounding cube, and a constant-memory stream that derives the
last coordinate from the others.  Membership of a single point likewise has
two routes: the one-line nim-sum test and the top-down high/low bit
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from .core import Position, nim_sum
from .errors import BadRequestError, BudgetExceededError

# Materializing operations refuse to build more than 2**budget points/cells.
DEFAULT_BUDGET_EXPONENT = 24


@dataclass(frozen=True)
class IterationSpec:
    """Dimension ``d`` and iteration index ``n``; both start at 1."""

    d: int
    n: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise BadRequestError(f"dimension must be at least 1, got {self.d}")
        if self.n < 1:
            raise BadRequestError(f"iteration index must be at least 1, got {self.n}")


@dataclass(frozen=True)
class PointSet:
    """A d-dimensional point list in strict lexicographic order.

    ``n`` is the bounding exponent: every coordinate is below 2**n.  Strict
    ordering doubles as a no-duplicates guarantee and makes set equality a
    plain sequence comparison.
    """

    d: int
    n: int
    points: tuple[Position, ...]

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"dimension must be at least 1, got {self.d}")
        if self.n < 0:
            raise ValueError(f"bounding exponent must be nonnegative, got {self.n}")
        bound = 1 << self.n
        previous: Position | None = None
        for point in self.points:
            if len(point) != self.d:
                raise ValueError(f"point {point} does not have dimension {self.d}")
            if any(c < 0 or c >= bound for c in point):
                raise ValueError(f"point {point} outside [0, 2^{self.n})^{self.d}")
            if previous is not None and point <= previous:
                raise ValueError(f"points not in strict lexicographic order at {point}")
            previous = point

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[Position]:
        return iter(self.points)


def check_budget(required_exponent: int, budget_exponent: int, what: str) -> None:
    """Raise BudgetExceededError when 2**required would overrun 2**budget."""
    if required_exponent > budget_exponent:
        raise BudgetExceededError(
            f"{what} needs 2^{required_exponent} entries but the budget"
            f" allows 2^{budget_exponent}; lower n or raise the budget",
            required_exponent=required_exponent,
            limit_exponent=budget_exponent,
        )


def base_demihypercube(d: int) -> PointSet:
    """The first iteration: 0/1 vectors of length d with an even number of ones.

    Cardinality 2**(d-1); obtained by deleting alternating vertices of the
    unit hypercube, keeping the origin.
    """
    if d < 1:
        raise BadRequestError(f"dimension must be at least 1, got {d}")
    points = tuple(p for p in product((0, 1), repeat=d) if sum(p) % 2 == 0)
    return PointSet(d=d, n=1, points=points)


def iterate_recursive(spec: IterationSpec,
                      budget_exponent: int = DEFAULT_BUDGET_EXPONENT) -> PointSet:
    """Iteration n by the literal recursion.

    Start from the base demihypercube; each step places one copy of the
    previous iteration at every point of the scaled base, i.e. iteration k+1
    is the union of (a + iteration k) over a in 2**k * base.
    """
    check_budget(spec.n * (spec.d - 1), budget_exponent,
                 f"iteration (d={spec.d}, n={spec.n})")
    base = base_demihypercube(spec.d).points
    current = list(base)
    for k in range(1, spec.n):
        scale = 1 << k
        merged = [
            tuple(x + scale * b for x, b in zip(point, shift))
            for shift in base
            for point in current
        ]
        merged.sort()
        deduped = [merged[0]]
        for point in merged[1:]:
            if point != deduped[-1]:
                deduped.append(point)
        # The shifted copies are disjoint; a duplicate would mean a bug.
        assert len(deduped) == len(merged), "shifted copies overlapped"
        current = deduped
    return PointSet(d=spec.d, n=spec.n, points=tuple(current))


def generate_filtered(spec: IterationSpec,
                      budget_exponent: int = DEFAULT_BUDGET_EXPONENT) -> PointSet:
    """Iteration n as the nim-sum-zero subset of the bounding cube.

    Scans all 2**(n*d) candidate points of [0, 2**n)^d, so the budget check
    uses n*d rather than the materialized count.
    """
    check_budget(spec.n * spec.d, budget_exponent,
                 f"filtering [0, 2^{spec.n})^{spec.d}")
    size = 1 << spec.n
    points = tuple(p for p in product(range(size), repeat=spec.d) if nim_sum(p) == 0)
    return PointSet(d=spec.d, n=spec.n, points=points)


def stream_points(spec: IterationSpec) -> Iterator[Position]:
    """Yield every point of iteration n exactly once, in lexicographic order.

    Enumerates the first d-1 coordinates over [0, 2**n)^(d-1) and derives the
    last as their nim-sum (which is again below 2**n).  Memory use does not
    depend on the point count, so no budget applies.  Two points never share
    a prefix, so prefix order is full lexicographic order.
    """
    size = 1 << spec.n
    for prefix in product(range(size), repeat=spec.d - 1):
        yield prefix + (nim_sum(prefix),)


def membership_nimsum(position: Sequence[int]) -> bool:
    """Point is in the demihypercube iff its coordinates nim-sum to zero."""
    return nim_sum(position) == 0


def membership_recursive(position: Sequence[int]) -> bool:
    """Membership by the top-down high/low decomposition.

    Pick the smallest level with all coordinates below 2**(level+1) (from the
    maximum coordinate's bit length, for determinism).  At each level the
    high part keeps the 2**level bit of every coordinate and must have an
    even number of nonzero entries; the low part recurses one level down.
    At level 0 the coordinates are bits and the plain parity rule decides.
    Agrees with membership_nimsum on every input.
    """
    coords = tuple(position)
    level = max((c.bit_length() for c in coords), default=1) - 1
    for bit_index in range(max(level, 0), 0, -1):
        bit = 1 << bit_index
        high_ones = sum(1 for c in coords if c & bit)
        if high_ones % 2:
            return False
        coords = tuple(c & (bit - 1) for c in coords)
    return sum(coords) % 2 == 0
