from __future__ import annotations

from dataclasses import dataclass
from typing import Any

import numpy as np

from ergm_calibration.core.constant import FLOAT_FORMAT


@dataclass(frozen=True, slots=True, kw_only=True)
class CalibrationMap:
    """
    Affine correction g(θ) = Wθ + λ between the calibrated target and the
    pseudo-posterior.

    g maps θ* to θ̂_PL; the correction applies g⁻¹(θ) = Vθ + (θ* − Vθ̂_PL).
    """

    theta_star: np.ndarray
    theta_pl: np.ndarray
    h_star: np.ndarray
    h_pl: np.ndarray
    w: np.ndarray
    v: np.ndarray
    lam: np.ndarray

    def __post_init__(self) -> None:
        for name in ("theta_star", "theta_pl", "lam"):
            object.__setattr__(self, name, np.atleast_1d(np.asarray(getattr(self, name), dtype=np.float64)))
        for name in ("h_star", "h_pl", "w", "v"):
            object.__setattr__(self, name, np.atleast_2d(np.asarray(getattr(self, name), dtype=np.float64)))

    @property
    def d(self) -> int:
        return self.theta_star.size

    @property
    def log_abs_det_w(self) -> float:
        return float(np.linalg.slogdet(self.w)[1])

    def forward(self, theta: np.ndarray) -> np.ndarray:
        """g(θ); works row-wise on a T×d array."""
        return np.asarray(theta) @ self.w.T + self.lam

    def inverse(self, theta: np.ndarray) -> np.ndarray:
        """g⁻¹(θ) = V(θ − θ̂_PL) + θ*; works row-wise on a T×d array."""
        return (np.asarray(theta) - self.theta_pl) @ self.v.T + self.theta_star

    # -------------------------
    # Serialization
    # -------------------------

    _FIELDS = ("theta_star", "theta_pl", "h_star", "h_pl", "w", "v", "lam")

    def to_text(self) -> str:
        lines = [f"# calibration map, d={self.d}"]
        for name in self._FIELDS:
            value = np.atleast_2d(getattr(self, name))
            lines.append(f"[{name}] {value.shape[0]} {value.shape[1]}")
            for row in value:
                lines.append(" ".join(FLOAT_FORMAT % x for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CalibrationMap:
        values: dict[str, Any] = {}
        lines = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
        pos = 0
        while pos < len(lines):
            header = lines[pos].split()
            name = header[0].strip("[]")
            rows, cols = int(header[1]), int(header[2])
            block = [[float(x) for x in lines[pos + 1 + r].split()] for r in range(rows)]
            matrix = np.array(block).reshape(rows, cols)
            values[name] = matrix[0] if name in ("theta_star", "theta_pl", "lam") else matrix
            pos += rows + 1
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        return {name: getattr(self, name).tolist() for name in self._FIELDS}
