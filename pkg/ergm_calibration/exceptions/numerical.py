from .base import ErgmCalibrationError


class NumericalError(ErgmCalibrationError):
    """Base class for numerical failures."""

    default_message = "Numerical failure"


class DomainError(NumericalError):
    """
    Raised when a parameter vector is non-finite or has the wrong length.
    """

    default_message = "Parameter outside the function domain"


class NotNegativeDefiniteError(NumericalError):
    """
    Raised when a Hessian has no Cholesky factorisation of its negation.
    """

    default_message = "Matrix is not negative definite"


class SeparationError(NumericalError):
    """
    Raised when the MPLE runs off to infinity or the response is constant.
    """

    default_message = "Maximum pseudolikelihood estimate may not exist"
    hint = "Supply a prior or drop terms that perfectly separate the dyads"


class CalibrationInfeasibleError(NumericalError):
    """
    Raised when the Monte Carlo curvature estimate is not negative definite.
    """

    default_message = "Estimated true-posterior Hessian is not negative definite"
    hint = "Increase the number of simulated graphs for the Hessian estimate"


class InitializationError(NumericalError):
    """
    Raised when the target log-density is not finite at the start point.
    """

    default_message = "Log target is not finite at the initial value"


class UnsupportedDimensionError(NumericalError):
    """
    Raised when a diagnostic is requested for an unsupported dimension.
    """

    default_message = "Unsupported parameter dimension"


class UndefinedEssError(NumericalError):
    """
    Raised when the effective sample size is undefined (zero variance).
    """

    default_message = "Effective sample size undefined for a constant series"


class SizeCapError(NumericalError):
    """
    Raised when exact enumeration is requested on a graph that is too large.
    """

    default_message = "Graph too large for exact enumeration"


class OracleMismatchError(NumericalError):
    """
    Raised by the oracle self-test when a sampler disagrees with enumeration.
    """

    default_message = "Sampler output disagrees with exact enumeration"
