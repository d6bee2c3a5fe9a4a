"""
Exception hierarchy for confusion-matrix measures.
"""
from typing import Optional


class MeasuresError(Exception):
    """Base class for every error raised by confmeasures."""


class ValidationError(MeasuresError, ValueError):
    """Input does not satisfy a documented precondition."""


class NonSquareError(ValidationError):
    """Grid rows do not all have as many entries as there are rows."""


class TooFewClassesError(ValidationError):
    """Fewer classes than the operation supports."""


class NegativeEntryError(ValidationError):
    """A count is negative."""


class ZeroTotalError(ValidationError):
    """All counts are zero."""


class NonIntegerEntryError(ValidationError):
    """A count is not an integer."""


class LabelLengthError(ValidationError):
    """True and predicted label sequences differ in length."""


class LabelRangeError(ValidationError):
    """A class label falls outside the class range."""


class ParameterError(ValidationError):
    """A numeric parameter is outside its admissible range."""


class ParseError(ValidationError):
    """Malformed matrix text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(MeasuresError):
    """Pair enumeration would exceed the configured pair budget."""


class DegenerateStatisticError(MeasuresError, ValueError):
    """A statistic is undefined for the given data (zero variance, zero spread)."""


class SanityBandError(MeasuresError):
    """Experiment summary falls outside the always-on sanity band."""
