"""Nim arithmetic: nim-sums, P/N classification, and winning-move computation.

Everything here is a pure function of immutable values.  A position is a
plain tuple of nonnegative integers, read either as Nim pile sizes or as a
lattice point; ``as_position`` is the one place its invariants are enforced.
"""

from __future__ import annotations

from enum import Enum
from functools import reduce
from operator import xor
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import BadRequestError

MAX_COORD_BITS = 64
MAX_COORD = (1 << MAX_COORD_BITS) - 1

Position = tuple[int, ...]


class Classification(Enum):
    """P: the player who just moved wins with best play.  N: the next player does."""

    P = "P"
    N = "N"


class Move(NamedTuple):
    """Reduce pile ``pile_index`` to ``new_size`` (strictly smaller than before)."""

    pile_index: int
    new_size: int


def as_position(values: Iterable[int]) -> Position:
    """Validate pile sizes / coordinates and freeze them as a tuple.

    Rejects empty input, non-integers, negatives, and values wider than
    64 bits.
    """
    coords = tuple(values)
    if not coords:
        raise BadRequestError("a position needs at least one pile")
    for value in coords:
        if isinstance(value, bool) or not isinstance(value, int):
            raise BadRequestError(f"pile size must be an integer, got {value!r}")
        if value < 0:
            raise BadRequestError(f"pile size must be nonnegative, got {value}")
        if value > MAX_COORD:
            raise BadRequestError(
                f"pile size {value} does not fit in {MAX_COORD_BITS} bits")
    return coords


def nim_sum(values: Iterable[int]) -> int:
    """Binary addition without carries over all values; 0 for empty input."""
    return reduce(xor, values, 0)


def classify(position: Sequence[int]) -> Classification:
    """P exactly when the nim-sum of the coordinates is zero."""
    return Classification.P if nim_sum(position) == 0 else Classification.N


def is_terminal(position: Sequence[int]) -> bool:
    return not any(position)


def legal_moves(position: Sequence[int]) -> Iterator[Move]:
    """Every legal move, ordered by pile index, then new size ascending."""
    for index, size in enumerate(position):
        for new_size in range(size):
            yield Move(index, new_size)


def apply_move(position: Sequence[int], move: Move) -> Position:
    """The position after a move.  Assumes the move is legal."""
    return tuple(move.new_size if i == move.pile_index else size
                 for i, size in enumerate(position))


def optimal_move(position: Sequence[int]) -> Move | None:
    """The canonical winning move, or None from a P-position.

    From an N-position with nim-sum s, some pile satisfies x ^ s < x (the
    pile carrying the highest set bit of s does); reducing it to x ^ s
    restores nim-sum zero.  Ties break to the lowest pile index.
    """
    s = nim_sum(position)
    if s == 0:
        return None
    for index, size in enumerate(position):
        target = size ^ s
        if target < size:
            return Move(index, target)
    raise AssertionError("unreachable: every N-position has a reducible pile")


def all_winning_moves(position: Sequence[int]) -> list[Move]:
    """Every move that lands on a P-position; empty exactly for P-positions.

    The new size that zeroes the nim-sum is forced per pile (x ^ s), so at
    most one winning move exists per pile and pile-index order is already
    (pile_index, new_size) order.
    """
    s = nim_sum(position)
    if s == 0:
        return []
    return [Move(index, size ^ s)
            for index, size in enumerate(position) if size ^ s < size]
