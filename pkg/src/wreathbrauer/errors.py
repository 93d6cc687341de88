"""Exception hierarchy shared by every layer of the package."""

from __future__ import annotations


class WreathBrauerError(Exception):
    """Base class for all errors raised by this package."""

    exit_code = 1


class DomainError(WreathBrauerError, ValueError):
    """An argument lies outside the domain of the operation."""

    exit_code = 2


class PreconditionError(WreathBrauerError):
    """A documented precondition failed; carries a short diagnosis."""

    exit_code = 2


class ResourceError(WreathBrauerError):
    """A configured size bound would be exceeded."""

    exit_code = 3


class ParseError(WreathBrauerError, ValueError):
    """Malformed textual input, with an optional line/column position."""

    exit_code = 4

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class InternalError(WreathBrauerError, RuntimeError):
    """An algorithmic invariant was violated; indicates a bug or a false claim."""

    exit_code = 1


__all__ = [
    "WreathBrauerError",
    "DomainError",
    "PreconditionError",
    "ResourceError",
    "ParseError",
    "InternalError",
]
