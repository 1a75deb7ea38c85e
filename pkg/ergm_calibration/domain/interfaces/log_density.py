from __future__ import annotations

from typing import Protocol, runtime_checkable

import numpy as np


@runtime_checkable
class LogDensity(Protocol):
    """Anything a random-walk Metropolis-Hastings chain can target."""

    @property
    def d(self) -> int:
        ...

    def log_density(self, theta: np.ndarray) -> float:
        ...
