"""Nim strategy engine and discrete Sierpinski demihypercube generators.

The package exposes two independently implemented constructions — the
copy-and-shift fractal recursion and the set of zero-nim-sum lattice points —
together with a harness that checks their equivalence exhaustively, an
optimal-play game engine, serializers, a CLI, and a local JSON API.
"""

from .core import (
    MAX_COORD,
    MAX_COORD_BITS,
    Classification,
    Move,
    Position,
    all_winning_moves,
    apply_move,
    as_position,
    classify,
    is_terminal,
    legal_moves,
    nim_sum,
    optimal_move,
)
from .engine import (
    GameSession,
    GameStatus,
    Hint,
    Player,
    SimulationResult,
    apply_human_move,
    choose_engine_move,
    engine_move,
    hint,
    new_game,
    replayed_position,
    simulate,
)
from .errors import (
    BadRequestError,
    BudgetExceededError,
    IllegalMoveError,
    NimcubeError,
    SessionNotFoundError,
    TerminalGameError,
    WrongTurnError,
)
from .fractal import (
    DEFAULT_BUDGET_EXPONENT,
    IterationSpec,
    PointSet,
    base_demihypercube,
    generate_filtered,
    iterate_recursive,
    membership_nimsum,
    membership_recursive,
    stream_points,
)
from .geometry import (
    ShadowGrid,
    project_pointset,
    restrict,
    shadow,
    verify_self_similarity,
)
from .verify import (
    DEFAULT_SWEEP_EXPONENT,
    VerificationReport,
    sweep_theorem,
    verify_inductive_step,
    verify_theorem,
)

__version__ = "0.1.0"
