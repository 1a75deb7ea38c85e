from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ergm_calibration.exceptions.numerical import NotNegativeDefiniteError


@dataclass(frozen=True, slots=True, kw_only=True)
class ProposalSpec:
    """
    Symmetric Gaussian random-walk proposal h(θ'|θ) = N(θ, covariance).

    ``tuning`` is the diagonal matrix T; ``factor`` is the lower Cholesky
    factor of the covariance used to draw increments.
    """

    tuning: np.ndarray
    covariance: np.ndarray
    factor: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        cov = np.atleast_2d(np.asarray(self.covariance, dtype=np.float64))
        cov = 0.5 * (cov + cov.T)
        try:
            factor = np.linalg.cholesky(cov)
        except np.linalg.LinAlgError as exc:
            raise NotNegativeDefiniteError("Proposal covariance must be positive definite") from exc
        object.__setattr__(self, "tuning", np.atleast_2d(np.asarray(self.tuning, dtype=np.float64)))
        object.__setattr__(self, "covariance", cov)
        object.__setattr__(self, "factor", factor)

    @classmethod
    def from_curvature(
        cls,
        *,
        tuning: float | np.ndarray,
        prior_precision: np.ndarray,
        likelihood_precision: np.ndarray,
    ) -> ProposalSpec:
        """Σ = T (B₀ + C⁻¹)⁻¹ T with C⁻¹ = −H(θ̂_MPLE)."""
        d = prior_precision.shape[0]
        t = np.diag(np.broadcast_to(np.asarray(tuning, dtype=np.float64), (d,)))
        try:
            inner = np.linalg.inv(prior_precision + likelihood_precision)
        except np.linalg.LinAlgError as exc:
            raise NotNegativeDefiniteError("B0 + C^-1 is singular") from exc
        return cls(tuning=t, covariance=t @ inner @ t)

    @property
    def d(self) -> int:
        return self.covariance.shape[0]


@dataclass(frozen=True, slots=True, kw_only=True)
class McmcChain:
    """
    Retained Metropolis-Hastings draws.

    ``draws`` is T×d (burn-in already dropped), ``log_target`` holds the
    log target at each retained draw, ``accepted`` counts accepted moves
    over the retained iterations.
    """

    draws: np.ndarray
    log_target: np.ndarray
    accepted: int
    burn_in: int
    seed: int | None
    wall_time: float
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        draws = np.atleast_2d(np.asarray(self.draws, dtype=np.float64))
        log_target = np.asarray(self.log_target, dtype=np.float64)
        if log_target.shape != (draws.shape[0],):
            raise ValueError("log_target must have one entry per draw")
        if not 0 <= self.accepted <= draws.shape[0]:
            raise ValueError(f"accepted={self.accepted} outside [0, {draws.shape[0]}]")
        if not np.all(np.isfinite(draws)):
            raise ValueError("Chain draws must be finite")
        object.__setattr__(self, "draws", draws)
        object.__setattr__(self, "log_target", log_target)
        if not self.labels:
            object.__setattr__(self, "labels",
                               tuple(f"theta_{k + 1}" for k in range(draws.shape[1])))

    @property
    def length(self) -> int:
        return self.draws.shape[0]

    @property
    def d(self) -> int:
        return self.draws.shape[1]

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.length if self.length else 0.0

    def mean(self) -> np.ndarray:
        return self.draws.mean(axis=0)

    def covariance(self) -> np.ndarray:
        return np.atleast_2d(np.cov(self.draws, rowvar=False, ddof=1))

    def thin(self, stride: int) -> McmcChain:
        """Every ``stride``-th draw; acceptance is rescaled to the kept rows."""
        kept = self.draws[::stride]
        rate = self.acceptance_rate
        return replace(
            self,
            draws=kept,
            log_target=self.log_target[::stride],
            accepted=int(round(rate * kept.shape[0])),
        )


@dataclass(frozen=True, slots=True, kw_only=True)
class GraphSample:
    """
    Sufficient statistics of graphs simulated from p(·|θ).

    ``stats`` is N×d, ``densities`` the matching edge densities.
    """

    theta: np.ndarray
    stats: np.ndarray
    densities: np.ndarray
    aux_iters: int
    burn_in: int
    thinning: int
    chains: int = 1

    def __post_init__(self) -> None:
        stats = np.atleast_2d(np.asarray(self.stats, dtype=np.float64))
        if stats.shape[0] < 1:
            raise ValueError("A graph sample needs at least one row")
        if not np.all(np.isfinite(stats)):
            raise ValueError("Simulated statistics must be finite")
        object.__setattr__(self, "stats", stats)
        object.__setattr__(self, "densities", np.asarray(self.densities, dtype=np.float64))

    @property
    def size(self) -> int:
        return self.stats.shape[0]

    def mean(self) -> np.ndarray:
        return self.stats.mean(axis=0)
