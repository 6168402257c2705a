"""Exception hierarchy shared by every module.

Each class maps onto one CLI exit code, so callers can tell a rejected input
from a capacity limit or an inconclusive certification.
"""


class EdenError(Exception):
    exit_code = 5


class InvalidInput(EdenError, ValueError):
    exit_code = 2


class CapacityError(EdenError):
    exit_code = 3


class InconclusiveError(EdenError):
    exit_code = 4


class RepresentationError(InvalidInput):
    """A result exists but cannot be expressed in the requested representation."""


class GapError(InvalidInput):
    """Gluing windows are closer than the separation the decay bound allows."""

    def __init__(self, message, required_separation):
        super().__init__(message)
        self.required_separation = required_separation


class InvariantBreach(EdenError):
    exit_code = 5
