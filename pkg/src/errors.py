"""
Exception types raised by the cubik kernel.

Validation routines return reports instead of raising; everything else
signals failure with one of the classes below.
"""

from typing import Any, Optional


class CubikError(Exception):
    """Base class for all kernel errors."""


class DimensionMismatch(CubikError):
    """Operators or cubes whose dimensions do not line up."""


class InvalidOperator(CubikError):
    """Illegal generator index, malformed normal form or unparsable word."""


class BudgetExceeded(CubikError):
    """An enumeration ran past its candidate budget."""

    def __init__(self, operation: str, count: int, budget: int):
        self.operation = operation
        self.count = count
        self.budget = budget
        super().__init__(
            f"{operation}: enumeration budget of {budget} exceeded "
            f"after {count} candidates"
        )


class MissingFiller(CubikError):
    """No filler exists (or none was found) for an open box."""

    def __init__(self, problem: Any, message: Optional[str] = None):
        self.problem = problem
        super().__init__(message or f"no filler for {problem}")


class QuotientError(CubikError):
    """Gluing produced two different standard forms for one class."""


class ConeCheckMismatch(CubikError):
    """The face-equation and factorization cone tests disagree."""


class ThetaError(CubikError):
    """Case dispatch or lift failure in a coherent family of composites."""


class PreconditionError(CubikError):
    """A documented precondition of an operation does not hold."""


class FormatError(CubikError):
    """A .cub or .sim file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
