from .base import ErgmCalibrationError


class ConvergenceError(ErgmCalibrationError):
    """Base class for iterative procedures that fail to settle."""

    default_message = "Convergence failure"


class NonConvergenceError(ConvergenceError):
    """
    Raised when an optimiser exhausts its iteration budget.
    """

    default_message = "Iteration cap reached before the tolerance was met"
    hint = "Raise the iteration cap or loosen the tolerance"


class DegeneracyError(ConvergenceError):
    """
    Raised when simulated graphs keep saturating at the empty or
    complete graph.
    """

    default_message = "Simulated graphs are degenerate at the current parameters"
    hint = "Start Robbins-Monro from a different point, e.g. the zero vector"
