"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ShiftConvError(Exception):
    """Base class for all errors raised by shiftconv."""


class SizeError(ShiftConvError, ValueError):
    """A table size is zero, negative or above the configured cap."""


class RangeError(ShiftConvError, IndexError):
    """An argument lies outside the range covered by a table or a formula."""


class ArgumentError(ShiftConvError, ValueError):
    """An argument violates a precondition (unknown kind, bad divisibility, ...)."""


class NotInvertibleError(ArgumentError):
    """Modular inverse requested for a non-unit."""


class DomainError(ArgumentError):
    """Input outside the mathematical domain of an operation."""


class WrongBranchError(ArgumentError):
    """Operation invoked on the branch it does not handle (e.g. zero frequency)."""


class DegeneracyError(ArgumentError):
    """Not enough usable data points for a fit."""


class PoleError(ShiftConvError, ZeroDivisionError):
    """Gamma function evaluated at a pole."""


class CoefficientOverflowError(ShiftConvError, OverflowError):
    """An exact integer no longer fits in its fixed-width container."""


class AccuracyError(ShiftConvError, ArithmeticError):
    """A numerical integration did not reach its tolerance.

    Carries the partial value and the residual error estimate.
    """

    def __init__(self, message: str, value: complex = 0.0, residual: float = float("inf")):
        super().__init__(message)
        self.value = value
        self.residual = residual


class BudgetError(AccuracyError):
    """A cost cap (cells, nodes, evaluations) was exhausted."""


class TruncationError(ShiftConvError, ArithmeticError):
    """A truncated series or integral has a tail above tolerance."""

    def __init__(self, message: str, tail: float = float("inf"), suggestion: float | None = None):
        super().__init__(message)
        self.tail = tail
        self.suggestion = suggestion


class ContourError(ShiftConvError, ArithmeticError):
    """A Mellin-Barnes contour passes too close to a pole."""


class CorruptCacheError(ShiftConvError, ValueError):
    """A cache file failed validation; ``field`` names the failing part."""

    def __init__(self, message: str, field: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class KindMismatchError(CorruptCacheError):
    """A cache file holds a different table kind than requested."""
