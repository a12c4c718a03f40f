"""Exception hierarchy.

Every error raised by the engines derives from :class:`FreeplanarError`.
The CLI maps :class:`DomainError` to exit code 2 and
:class:`NumericFailure` to exit code 3.
"""

from __future__ import annotations


class FreeplanarError(Exception):
    """Base class for all package errors."""


class DomainError(FreeplanarError, ValueError):
    """Input is outside the domain of an operation."""


class InvalidWord(DomainError):
    pass


class BoundaryMismatch(DomainError):
    pass


class NotAnInsertion(DomainError):
    pass


class DegenerateDelta(DomainError):
    pass


class SideWordMismatch(DomainError):
    pass


class NotNormalized(DomainError):
    pass


class ShapeUnsupported(DomainError):
    pass


class Disconnected(DomainError):
    pass


class TooFewEdges(DomainError):
    pass


class WeightInvalid(DomainError):
    pass


class InvalidWeights(DomainError):
    pass


class PartitionInvalid(DomainError):
    pass


class PFViolated(DomainError):
    pass


class NonInvertible(DomainError):
    pass


class BudgetExceeded(DomainError):
    pass


class InsufficientMoments(DomainError):
    pass


class NumericFailure(FreeplanarError, ArithmeticError):
    """An iterative or floating point procedure failed to converge."""


class BranchAmbiguity(NumericFailure):
    pass


class SchemaInvalid(DomainError):
    """Graph or input document does not follow the expected schema."""
