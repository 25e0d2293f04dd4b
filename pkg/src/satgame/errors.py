"""Exception hierarchy shared by every module of the package."""


class SatGameError(Exception):
    """Base class for all package errors."""


class ParameterError(SatGameError, ValueError):
    """Invalid sizes, ranges or argument shapes."""


class UniverseTooSmall(ParameterError):
    """The universe is below the threshold a strategy needs."""


class StateError(SatGameError):
    """An operation was called on a family or game in the wrong state."""


class RuleViolation(SatGameError):
    """A move that breaks the intersecting (or Sperner) rule, or repeats a claimed set."""

    def __init__(self, message, move=None, witness=None):
        super().__init__(message)
        self.move = move
        self.witness = witness


class ForfeitError(SatGameError):
    """A strategy produced an illegal move; the game is forfeited."""

    def __init__(self, message, seat=None, strategy=None):
        super().__init__(message)
        self.seat = seat
        self.strategy = strategy


class ResourceLimitError(SatGameError):
    """An exhaustive computation would exceed its configured cap."""


class ConsistencyError(SatGameError, AssertionError):
    """A strategy broke one of its own invariants."""
