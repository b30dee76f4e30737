from __future__ import annotations

from typing import Optional


class TruthBeliefError(Exception):
    """Base class for every error raised by truth_belief."""


class DomainError(TruthBeliefError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ParseError(TruthBeliefError, ValueError):
    """A distribution file could not be read.

    `field` names the offending part of the file (e.g. ``"probs[2]"``).
    """

    def __init__(self, message: str, field: Optional[str] = None) -> None:
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class ConvergenceError(TruthBeliefError, RuntimeError):
    """The solver stopped without meeting its convergence criteria."""
