from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ergm_calibration.core.constant import PRIOR_VARIANCE
from ergm_calibration.exceptions.numerical import NotNegativeDefiniteError


@dataclass(frozen=True, slots=True, kw_only=True)
class GaussianPrior:
    """
    Multivariate normal prior N(mean, covariance).

    ``precision`` is B₀ = covariance⁻¹.
    """

    mean: np.ndarray
    covariance: np.ndarray
    precision: np.ndarray = field(init=False, repr=False)
    log_norm: float = field(init=False, repr=False)

    def __post_init__(self) -> None:
        mean = np.atleast_1d(np.asarray(self.mean, dtype=np.float64))
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=np.float64))
        if cov.shape != (mean.size, mean.size):
            raise ValueError(f"Prior covariance {cov.shape} does not match mean length {mean.size}")
        if not np.allclose(cov, cov.T):
            raise NotNegativeDefiniteError("Prior covariance must be symmetric")
        try:
            chol = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise NotNegativeDefiniteError("Prior covariance must be positive definite") from exc
        log_det = 2.0 * np.log(np.diag(chol)).sum()
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "precision", np.linalg.inv(cov))
        object.__setattr__(self, "log_norm", -0.5 * (mean.size * np.log(2 * np.pi) + log_det))

    @classmethod
    def default(cls, d: int, variance: float = PRIOR_VARIANCE) -> GaussianPrior:
        return cls(mean=np.zeros(d), covariance=variance * np.eye(d))

    @property
    def d(self) -> int:
        return self.mean.size

    def to_dict(self) -> dict[str, list]:
        return {"mean": self.mean.tolist(), "covariance": self.covariance.tolist()}
