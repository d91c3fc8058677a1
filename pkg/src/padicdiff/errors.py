"""Exception hierarchy shared by every module."""


class PadicDiffError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PadicDiffError, ValueError):
    """An argument lies outside the domain of an operation."""


class PrecisionError(PadicDiffError, ArithmeticError):
    """Working precision was exhausted before a result could be certified."""


class ConvergenceError(PrecisionError):
    """An iterative scheme or series failed to converge."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class IntegrityError(PadicDiffError):
    """Cached data (tables, group structure) violates a structural invariant."""
