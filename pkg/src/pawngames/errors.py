"""Exception types shared across the package."""

from __future__ import annotations


class PawnGameError(Exception):
    """Base class for all errors raised by this package."""


class GameFormatError(PawnGameError):
    """Malformed game text.  Carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(PawnGameError):
    """A structurally well-formed description violates a model invariant."""


class SolverPreconditionError(PawnGameError):
    """A solver was handed a game outside the class it decides."""


class BudgetExceededError(PawnGameError):
    """State-space construction would exceed the configured node budget."""

    def __init__(self, estimate: int, budget: int):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"estimated state space of {estimate} nodes exceeds budget {budget}"
        )
