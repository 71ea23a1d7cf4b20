"""Stateful Nim sessions between a human and the engine, plus batch simulations.

Sessions follow the normal-play convention: whoever takes the last stone
wins.  The engine plays the winning reduction whenever one exists; from a
lost position it falls back to removing one stone from the largest pile,
which prolongs the game and gives a fallible opponent room to err.
"""

from __future__ import annotations

import random
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple, Sequence

from .core import (
    Classification,
    Move,
    Position,
    apply_move,
    all_winning_moves,
    as_position,
    classify,
    is_terminal,
    optimal_move,
)
from .errors import BadRequestError, IllegalMoveError, TerminalGameError, WrongTurnError


class Player(Enum):
    HUMAN = "human"
    ENGINE = "engine"


class GameStatus(Enum):
    IN_PROGRESS = "in_progress"
    HUMAN_WON = "human_won"
    ENGINE_WON = "engine_won"


class HistoryEntry(NamedTuple):
    mover: Player
    move: Move
    position: Position


class Hint(NamedTuple):
    classification: Classification
    winning_moves: list[Move]


class SimulationResult(NamedTuple):
    engine_wins: int
    engine_losses: int


@dataclass
class GameSession:
    """One game: current position, side to move, and the full move history.

    Mutations to a single session must be serialized by the caller;
    different sessions are independent.
    """

    id: str
    initial_position: Position
    position: Position
    to_move: Player
    history: list[HistoryEntry] = field(default_factory=list)
    status: GameStatus = GameStatus.IN_PROGRESS


def new_game(piles: Iterable[int], human_moves_first: bool = True,
             session_id: str | None = None) -> GameSession:
    """Fresh session; rejects the all-zero start, which has no legal move."""
    position = as_position(piles)
    if is_terminal(position):
        raise BadRequestError("cannot start from all-zero piles: no legal first move")
    return GameSession(
        id=session_id if session_id is not None else uuid.uuid4().hex,
        initial_position=position,
        position=position,
        to_move=Player.HUMAN if human_moves_first else Player.ENGINE,
    )


def _check_playable(session: GameSession, mover: Player) -> None:
    if session.status is not GameStatus.IN_PROGRESS:
        raise TerminalGameError(f"game already ended: {session.status.value}")
    if session.to_move is not mover:
        raise WrongTurnError(f"it is the {session.to_move.value}'s turn")


def _validate_move(position: Position, move: Move) -> None:
    if not 0 <= move.pile_index < len(position):
        raise IllegalMoveError(
            f"pile index {move.pile_index} out of range for {len(position)} piles")
    if move.new_size < 0:
        raise IllegalMoveError(f"new size must be nonnegative, got {move.new_size}")
    if move.new_size >= position[move.pile_index]:
        raise IllegalMoveError(
            f"new size {move.new_size} must be below the current"
            f" size {position[move.pile_index]} (remove at least one stone)")


def _record(session: GameSession, mover: Player, move: Move) -> None:
    session.position = apply_move(session.position, move)
    session.history.append(HistoryEntry(mover, move, session.position))
    if is_terminal(session.position):
        session.status = (GameStatus.HUMAN_WON if mover is Player.HUMAN
                          else GameStatus.ENGINE_WON)
    else:
        session.to_move = Player.ENGINE if mover is Player.HUMAN else Player.HUMAN


def apply_human_move(session: GameSession, move: Move) -> GameSession:
    """Apply the human's move; flips the turn or ends the game."""
    _check_playable(session, Player.HUMAN)
    _validate_move(session.position, move)
    _record(session, Player.HUMAN, move)
    return session


def choose_engine_move(position: Sequence[int]) -> Move:
    """Winning reduction when one exists, else one stone off the largest pile."""
    move = optimal_move(position)
    if move is not None:
        return move
    largest = max(range(len(position)), key=lambda i: (position[i], -i))
    return Move(largest, position[largest] - 1)


def engine_move(session: GameSession) -> tuple[GameSession, Move]:
    """Let the engine play; returns the session and the move it chose."""
    _check_playable(session, Player.ENGINE)
    move = choose_engine_move(session.position)
    _record(session, Player.ENGINE, move)
    return session, move


def hint(session: GameSession) -> Hint:
    """Current classification and every winning move (empty on a P-position)."""
    if session.status is not GameStatus.IN_PROGRESS:
        raise TerminalGameError(f"game already ended: {session.status.value}")
    return Hint(classify(session.position), all_winning_moves(session.position))


def replayed_position(session: GameSession) -> Position:
    """Fold the history over the initial position; must equal the current one."""
    position = session.initial_position
    for entry in session.history:
        position = apply_move(position, entry.move)
    return position


def _random_move(position: Position, rng: random.Random) -> Move:
    """Uniformly random legal move, without materializing the move list."""
    remaining = rng.randrange(sum(position))
    for index, size in enumerate(position):
        if remaining < size:
            return Move(index, remaining)
        remaining -= size
    raise AssertionError("unreachable: position was terminal")


def _play_single(start: Position, opponent: str, rng: random.Random) -> bool:
    """One game with the engine moving first; True when the engine wins."""
    position = start
    engine_to_move = True
    while True:
        if engine_to_move or opponent == "perfect":
            move = choose_engine_move(position)
        else:
            move = _random_move(position, rng)
        position = apply_move(position, move)
        if is_terminal(position):
            return engine_to_move
        engine_to_move = not engine_to_move


def simulate(start: Iterable[int], opponent: str = "random", trials: int = 1,
             seed: int = 0) -> SimulationResult:
    """Play the engine against an opponent for a number of trials.

    The engine moves first.  ``opponent`` is "random" (uniform legal moves)
    or "perfect" (the engine's own policy).  Each trial draws its own seed
    from the given one, so results are reproducible and order-independent.
    """
    position = as_position(start)
    if is_terminal(position):
        raise BadRequestError("cannot simulate from all-zero piles")
    if opponent not in ("random", "perfect"):
        raise BadRequestError(f"opponent must be 'random' or 'perfect', got {opponent!r}")
    if trials < 1:
        raise BadRequestError(f"trials must be positive, got {trials}")
    spawner = random.Random(seed)
    trial_seeds = [spawner.getrandbits(64) for _ in range(trials)]
    wins = sum(
        _play_single(position, opponent, random.Random(trial_seed))
        for trial_seed in trial_seeds
    )
    return SimulationResult(engine_wins=wins, engine_losses=trials - wins)
