"""Exception hierarchy shared by every module.

Each class carries a stable ``kind`` string that the CLI reports verbatim.
"""

from __future__ import annotations


class FibgfError(Exception):
    kind = "error"


class PreconditionError(FibgfError, ValueError):
    """An input violates a documented precondition."""

    kind = "precondition"


class ParseError(PreconditionError):
    """Malformed polynomial, rational-function or quadratic-number text."""

    kind = "parse_error"

    def __init__(self, message: str, text: str = "", pos: int | None = None) -> None:
        self.text = text
        self.pos = pos
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)


class ConsistencyError(FibgfError, RuntimeError):
    """An internal guard fired: a proven statement appears violated.

    Valid inputs never trigger this; it signals a bug or an input that slipped
    past validation.
    """

    kind = "internal_consistency"
