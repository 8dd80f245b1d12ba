"""Exception hierarchy shared by every layer of the workbench."""

from __future__ import annotations


class HilbCoeffError(Exception):
    """Base class for all errors raised by hilbcoeff."""


class InputError(HilbCoeffError, ValueError):
    """Malformed or semantically invalid user input."""


class ParseError(InputError):
    """Syntax error in a ring document or polynomial."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column
        self.reason = message


class RingMismatchError(InputError):
    """Operands belong to different rings."""


class PreconditionError(InputError):
    """An operation was called outside its mathematical domain."""


class ResourceError(HilbCoeffError):
    """A configured budget (S-pairs, retries, enumeration cap) was exhausted."""


class PostulationError(HilbCoeffError):
    """A Hilbert function did not stabilise before the n_max cap."""

    def __init__(self, message: str, n_max: int):
        super().__init__(message)
        self.n_max = n_max


class IdentityViolation(HilbCoeffError):
    """A proven identity failed numerically: indicates an engine defect."""
