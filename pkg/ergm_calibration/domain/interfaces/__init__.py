"""Interfaces (abstract base classes/protocols) for terms and targets."""

from .base_term import BaseTermStatistic
from .log_density import LogDensity

__all__ = ["BaseTermStatistic", "LogDensity"]
