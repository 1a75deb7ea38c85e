from .base import ErgmCalibrationError
from .config import ConfigError
from .convergence import ConvergenceError
from .graph import DataFormatError, GraphError
from .model import ModelError
from .numerical import NumericalError


class StageFailedError(ErgmCalibrationError):
    """
    Raised by the pipeline when one of its stages fails.

    Carries the stage name and the original exception.
    """

    default_message = "Pipeline stage failed"

    def __init__(self, stage: str, cause: ErgmCalibrationError):
        super().__init__(f"[{stage}] {cause}", hint=cause.hint)
        self.stage = stage
        self.cause = cause


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit code."""
    if isinstance(exc, StageFailedError):
        exc = exc.cause
    if isinstance(exc, ConfigError):
        return 2
    if isinstance(exc, (DataFormatError, GraphError, ModelError, OSError)):
        return 3
    if isinstance(exc, NumericalError):
        return 4
    if isinstance(exc, ConvergenceError):
        return 5
    return 1
