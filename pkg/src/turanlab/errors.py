"""Exception types shared across modules."""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """A search ran past its configured budget.

    ``progress`` holds whatever partial result the search had assembled.
    """

    def __init__(self, message: str, progress: dict | None = None):
        super().__init__(message)
        self.progress = progress or {}


class InvalidInstance(ValueError):
    """The requested (H, F, n) instance violates a precondition."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""
