"""Exception hierarchy shared across the package."""


class CondConvError(Exception):
    """Base class for all package errors."""


class ParameterError(CondConvError, ValueError):
    """A distribution or configuration parameter is outside its admissible range."""


class DomainError(CondConvError, ValueError):
    """An evaluation point lies outside the support of the function."""


class RangeError(CondConvError, ArithmeticError):
    """The result is not representable (e.g. an infinite density at a boundary)."""


class UnsupportedFamilyError(ParameterError):
    """The requested operation is not defined for this family."""


class EmptyRequestError(CondConvError, ValueError):
    """A request for zero items (samples, replicates, ...)."""


class QuadratureError(CondConvError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance.

    Attributes
    ----------
    estimate : float
        Integral value at the deepest level reached.
    error : float
        Error estimate at that level.
    """

    def __init__(self, message, estimate=float("nan"), error=float("nan")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class EstimationError(CondConvError, ArithmeticError):
    """An estimator could not produce an admissible (positive) estimate."""


class DatasetLookupError(CondConvError, LookupError):
    """Unknown built-in dataset name."""
