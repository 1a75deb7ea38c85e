from .base import ErgmCalibrationError


class ModelError(ErgmCalibrationError):
    """Base class for model specification errors."""

    default_message = "Model specification error"


class InvalidModelSpecError(ModelError):
    """
    Raised when a statistic term or term list is malformed.
    """

    default_message = "Invalid model specification"


class UnsupportedTermError(ModelError):
    """
    Raised when a requested term kind is not registered.
    """

    default_message = "Unsupported statistic term"


class ModelDataMismatchError(ModelError):
    """
    Raised when a term references data the graph does not carry,
    e.g. a missing node attribute or level.
    """

    default_message = "Model does not match the graph data"
    hint = "Load the attribute file referenced by the nodal terms"
