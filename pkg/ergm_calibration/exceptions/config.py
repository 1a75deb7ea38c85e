from .base import ErgmCalibrationError


class ConfigError(ErgmCalibrationError):
    """
    Raised when a run configuration is missing or invalid.
    """

    default_message = "Invalid run configuration"
