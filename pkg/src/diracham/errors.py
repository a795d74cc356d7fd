"""Exception types shared across the engine."""


class GraphFormatError(ValueError):
    """Malformed graph input (bad header, loop, duplicate or out-of-range edge)."""


class InvalidSetError(ValueError):
    """A vertex set contains ids outside 0..n-1."""


class DomainError(ValueError):
    """Input outside an operation's domain (e.g. n < 3 for Dirac checks)."""


class BudgetError(RuntimeError):
    """An exact/explicit mode was requested beyond its enumeration budget."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given arguments."""


class ClassificationFailedError(RuntimeError):
    """The constructed witness violates its case postconditions.

    Carries the diagnostics dict so callers can see which inequality broke.
    """

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


class HallViolationError(ValueError):
    """No perfect matching exists; carries a Hall violator set."""

    def __init__(self, violator: frozenset):
        super().__init__(
            f"Hall's condition fails: |N(X)| < |X| for X = {sorted(violator)}"
        )
        self.violator = violator
