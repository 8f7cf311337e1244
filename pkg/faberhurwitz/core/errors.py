"""
Exception hierarchy for faberhurwitz.

Every error raised by the package derives from FaberHurwitzError and from the
builtin exception a caller would naturally catch (ValueError, RuntimeError or
LookupError).
"""

from typing import Iterable, Optional, Sequence


class FaberHurwitzError(Exception):
    """Base class for all faberhurwitz errors."""


class PartitionError(ValueError, FaberHurwitzError):
    """Invalid partition data, size mismatch, or out-of-domain integer input."""


class IncompatibleSeriesError(ValueError, FaberHurwitzError):
    """Series combined across different variable sets, or unknown variable."""


class TruncationError(ValueError, FaberHurwitzError):
    """
    A truncation profile is too small (or invalid) for the requested result.

    Attributes:
        required: The bound that would have been sufficient, when known
    """

    def __init__(self, message: str, required: Optional[int] = None):
        super().__init__(message)
        self.required = required


class PolynomialityError(ValueError, FaberHurwitzError):
    """A series expected to be a polynomial in y has no terms at the expected degree."""


class ConvergenceError(RuntimeError, FaberHurwitzError):
    """A fixed-point system made no degree progress."""


class MissingSymbolError(LookupError, FaberHurwitzError):
    """A Faber symbol could not be resolved from a table."""


class SymbolSystemError(RuntimeError, FaberHurwitzError):
    """
    The linear system for Faber symbols is inconsistent or rank deficient.

    Attributes:
        free: Unknowns left undetermined by the system (empty for inconsistency)
    """

    def __init__(self, message: str, free: Iterable = ()):
        super().__init__(message)
        self.free: Sequence = tuple(free)


class DimensionError(ValueError, FaberHurwitzError):
    """Symbol indices violate the dimension constraint k + Σa = g − 2 + n."""


class NotInImageError(ValueError, FaberHurwitzError):
    """Exact division or operator inversion was asked for an input outside the image."""
