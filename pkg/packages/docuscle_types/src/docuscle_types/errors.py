"""
Typed errors shared by every docuscle package.

Each error carries a stable ``reason`` code so reports can record why a
quantity is missing (``null`` plus reason) instead of emitting NaN.
"""

from __future__ import annotations

from typing import Optional


class DocuscleError(Exception):
    """Base class for all docuscle errors."""

    reason: str = "docuscle_error"

    def __init__(self, message: str, *, field: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.field = field

    def __str__(self) -> str:
        if self.field:
            return f"{self.field}: {self.message}"
        return self.message


# --------------------------------------------------------------------------- #
# Input errors                                                                #
# --------------------------------------------------------------------------- #


class InvalidInputError(DocuscleError, ValueError):
    """Malformed state, event, operator or argument."""

    reason = "invalid_input"


class DimensionMismatchError(InvalidInputError):
    """Objects of different sample-space / Hilbert-space dimension combined."""

    reason = "dimension_mismatch"


class ConfigValidationError(InvalidInputError):
    """A run configuration failed to parse or validate."""

    reason = "config_validation"

    def __init__(
        self,
        message: str,
        *,
        field: Optional[str] = None,
        line: Optional[int] = None,
    ):
        super().__init__(message, field=field)
        self.line = line

    def __str__(self) -> str:
        prefix = f"line {self.line}: " if self.line is not None else ""
        return prefix + super().__str__()


# --------------------------------------------------------------------------- #
# Undefined probabilities                                                     #
# --------------------------------------------------------------------------- #


class ConditioningOnNullError(InvalidInputError):
    """Classical conditioning on an event of probability zero."""

    reason = "conditioning_on_null"


class DegenerateRelevanceError(InvalidInputError):
    """P(R) is 0 or 1, so one of the conditionals p, q is undefined."""

    reason = "degenerate_relevance"


class PostSelectionOnNullError(InvalidInputError):
    """Lüders post-selection on a property the state never passes."""

    reason = "post_selection_on_null"


# --------------------------------------------------------------------------- #
# Runtime errors                                                              #
# --------------------------------------------------------------------------- #


class InvariantViolationError(DocuscleError, RuntimeError):
    """A computed quantity left its admissible range (corrupted inputs)."""

    reason = "invariant_violation"


class ProgressImpossibleError(DocuscleError, RuntimeError):
    """A beam run cannot collect the requested number of docuscles."""

    reason = "progress_impossible"

    def __init__(self, message: str, *, emitted: int = 0, recorded: int = 0):
        super().__init__(message)
        self.emitted = emitted
        self.recorded = recorded


class AbsentEstimateError(DocuscleError, LookupError):
    """An estimate was requested that the frequency table cannot provide."""

    reason = "absent_estimate"


__all__ = [
    "DocuscleError",
    "InvalidInputError",
    "DimensionMismatchError",
    "ConfigValidationError",
    "ConditioningOnNullError",
    "DegenerateRelevanceError",
    "PostSelectionOnNullError",
    "InvariantViolationError",
    "ProgressImpossibleError",
    "AbsentEstimateError",
]
