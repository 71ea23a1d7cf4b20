"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` (the identifier used
on the wire by the API) and the HTTP status it maps to.  The set of codes is
closed: bad_request, illegal_move, wrong_turn, terminal_game, not_found,
budget_exceeded.
"""

from __future__ import annotations


class NimcubeError(Exception):
    code = "bad_request"
    http_status = 400


class BadRequestError(NimcubeError, ValueError):
    """Malformed input: empty/oversized piles, bad dimensions, bad flags."""

    code = "bad_request"
    http_status = 400


class IllegalMoveError(NimcubeError, ValueError):
    """A move that the rules forbid: bad pile index or non-decreasing size."""

    code = "illegal_move"
    http_status = 400


class WrongTurnError(NimcubeError):
    """A move submitted for the side that is not on turn."""

    code = "wrong_turn"
    http_status = 409


class TerminalGameError(NimcubeError):
    """A play operation on a game that already ended."""

    code = "terminal_game"
    http_status = 409


class SessionNotFoundError(NimcubeError):
    """Unknown or expired game session id."""

    code = "not_found"
    http_status = 404


class BudgetExceededError(NimcubeError):
    """An enumeration that would materialize more points than allowed.

    ``required_exponent`` is the base-2 exponent the request needs,
    ``limit_exponent`` the configured cap; both are echoed to callers so
    they can retry with a smaller instance.
    """

    code = "budget_exceeded"
    http_status = 400

    def __init__(self, message: str, *, required_exponent: int | None = None,
                 limit_exponent: int | None = None) -> None:
        super().__init__(message)
        self.required_exponent = required_exponent
        self.limit_exponent = limit_exponent
