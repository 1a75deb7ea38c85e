from .base import ErgmCalibrationError
from .config import ConfigError
from .convergence import ConvergenceError, DegeneracyError, NonConvergenceError
from .graph import DataFormatError, GraphError, GraphStructureError
from .model import (InvalidModelSpecError, ModelDataMismatchError, ModelError,
                    UnsupportedTermError)
from .numerical import (CalibrationInfeasibleError, DomainError,
                        InitializationError, NotNegativeDefiniteError,
                        NumericalError, OracleMismatchError, SeparationError,
                        SizeCapError, UndefinedEssError,
                        UnsupportedDimensionError)
from .pipeline import StageFailedError, exit_code_for

__all__ = [
    # Base
    "ErgmCalibrationError",

    # Graph
    "GraphError",
    "GraphStructureError",
    "DataFormatError",

    # Model
    "ModelError",
    "InvalidModelSpecError",
    "UnsupportedTermError",
    "ModelDataMismatchError",

    # Numerical
    "NumericalError",
    "DomainError",
    "NotNegativeDefiniteError",
    "SeparationError",
    "CalibrationInfeasibleError",
    "InitializationError",
    "UnsupportedDimensionError",
    "UndefinedEssError",
    "SizeCapError",
    "OracleMismatchError",

    # Convergence
    "ConvergenceError",
    "NonConvergenceError",
    "DegeneracyError",

    # Config / pipeline
    "ConfigError",
    "StageFailedError",
    "exit_code_for",
]
