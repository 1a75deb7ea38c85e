"""Domain package for ERGM calibration types."""

from . import interfaces, models

__all__ = ["models", "interfaces"]
