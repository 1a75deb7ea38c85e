class ErgmCalibrationError(Exception):
    """
    Base exception for the ERGM calibration library.

    All custom exceptions MUST inherit from this.
    """

    default_message = "ERGM calibration error occurred"
    hint: str | None = None

    def __init__(self, message: str | None = None, *, hint: str | None = None):
        super().__init__(message or self.default_message)
        if hint is not None:
            self.hint = hint
