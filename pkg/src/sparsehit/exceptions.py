"""Exception types shared across the package."""


class SparseHitError(Exception):
    """Base class for all package errors."""


class InvalidInputError(SparseHitError, ValueError):
    """Malformed graph, pattern or parameter input."""


class BudgetExceededError(SparseHitError):
    """A configured work budget was exhausted before an answer was found.

    Raised by occurrence enumeration, exact search and minor expansion when
    the instance is out of desk scale. Distinct from a negative answer.
    """


class ParameterOverflowError(SparseHitError, OverflowError):
    """Theory-grade parameters are too large to be used in practice."""


class InvalidSolutionError(SparseHitError):
    """A produced vertex set failed the validity re-check."""

    def __init__(self, message, surviving=None):
        super().__init__(message)
        self.surviving = surviving
