"""
Mode and curvature adjustment of the pseudo-posterior.

The true posterior mode θ* comes from a Robbins-Monro iteration on a
simulation-based gradient, its curvature H* from the Monte Carlo
variance of the sufficient statistics at θ*. An affine map g(θ) = Wθ + λ
then carries the pseudo-posterior's mode θ̂_PL and curvature Ĥ_PL onto
(θ*, H*), and pseudo-posterior draws are corrected with g⁻¹.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from pydantic import BaseModel, ConfigDict, Field
from scipy.linalg import LinAlgError, cholesky, solve_triangular

from ergm_calibration.core.constant import (HESSIAN_GRAPHS,
                                            MAP_IDENTITY_TOL, RM_ALPHA,
                                            RM_DENSE_WARNING, RM_MAX_ITERS,
                                            RM_MIN_ITERS_FOR_SATURATION,
                                            RM_PERSISTENCE,
                                            RM_SATURATION_SHARE, RM_TOL,
                                            TNT_BURN_IN, TNT_DRAWS, TNT_THIN)
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.interfaces.log_density import LogDensity
from ergm_calibration.domain.models.calibration_map import CalibrationMap
from ergm_calibration.domain.models.chain import GraphSample, McmcChain
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.domain.models.results import RobbinsMonroResult
from ergm_calibration.exceptions.convergence import DegeneracyError
from ergm_calibration.exceptions.numerical import (CalibrationInfeasibleError,
                                                   DomainError,
                                                   NotNegativeDefiniteError,
                                                   NumericalError)
from ergm_calibration.inference.pseudolikelihood import (grad_log_prior,
                                                         hess_log_prior)
from ergm_calibration.inference.tnt import SeedLike, simulate_stats
from ergm_calibration.statistics.evaluator import sufficient_statistics

# Mean simulated density at or above this counts as a saturated iteration
_SATURATED_DENSITY = 0.99


class RobbinsMonroConfig(BaseModel):
    """
    Step sizes ε_i = α / i; stop once ‖θ_{i+1} − θ_i‖_∞ < tol for
    ``persistence`` consecutive iterations.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(default=RM_ALPHA, gt=0)
    tol: float = Field(default=RM_TOL, gt=0)
    max_iters: int = Field(default=RM_MAX_ITERS, ge=1)
    persistence: int = Field(default=RM_PERSISTENCE, ge=1)
    graphs: int = Field(default=TNT_DRAWS, ge=1)
    burn: int = Field(default=TNT_BURN_IN, ge=0)
    thin: int = Field(default=TNT_THIN, ge=1)
    chains: int = Field(default=1, ge=1)
    hessian_graphs: int = Field(default=HESSIAN_GRAPHS, ge=2)

    def step(self, i: int) -> float:
        return self.alpha / i


def noisy_grad_log_post(
    theta: np.ndarray,
    observed_stats: np.ndarray,
    sample: GraphSample,
    prior: GaussianPrior,
) -> np.ndarray:
    """s(y) − mean of s(y′_i) + ∇ log p(θ)."""
    observed_stats = np.asarray(observed_stats, dtype=np.float64)
    if observed_stats.shape != (sample.stats.shape[1],) or prior.d != observed_stats.size:
        raise DomainError(
            f"Dimension mismatch: observed {observed_stats.shape}, "
            f"sample {sample.stats.shape}, prior {prior.d}"
        )
    return observed_stats - sample.mean() + grad_log_prior(theta, prior)


def robbins_monro_map(
    theta0: np.ndarray,
    cfg: RobbinsMonroConfig,
    observed: Graph,
    model: ModelSpec,
    prior: GaussianPrior,
    *,
    observed_stats: np.ndarray | None = None,
    seed: SeedLike = None,
) -> RobbinsMonroResult:
    """
    Stochastic-approximation search for the true posterior mode.

    Every iteration simulates ``cfg.graphs`` graphs at the current θ,
    starting from the observed graph. Reaching ``max_iters`` is logged
    and reported through ``converged=False``.

    Raises:
        DegeneracyError: more than half the iterations simulate graphs
            saturated at the empty or the complete graph
    """
    theta = np.atleast_1d(np.asarray(theta0, dtype=np.float64)).copy()
    if theta.shape != (model.d,) or not np.all(np.isfinite(theta)):
        raise DomainError(f"θ₀ must be a finite vector of length {model.d}, got {theta0}")
    if observed_stats is None:
        observed_stats = sufficient_statistics(observed, model)
    rng = np.random.default_rng(seed)

    trajectory = [theta.copy()]
    saturated = 0
    quiet_steps = 0
    converged = False
    i = 0
    logger.debug(f"Robbins-Monro from θ₀={np.round(theta, 4)}: α={cfg.alpha}, N={cfg.graphs}")
    for i in range(1, cfg.max_iters + 1):
        sample = simulate_stats(
            theta, model, observed,
            burn=cfg.burn, draws=cfg.graphs, thin=cfg.thin, seed=rng, chains=cfg.chains,
        )
        mean_density = float(sample.densities.mean())
        if i == 1 and mean_density > RM_DENSE_WARNING:
            logger.warning(
                f"Graphs simulated at θ₀ are {mean_density:.0%} dense; "
                "the start point may lie in a degenerate region"
            )
        if mean_density >= _SATURATED_DENSITY or not np.any(sample.densities):
            saturated += 1
        if i >= RM_MIN_ITERS_FOR_SATURATION and saturated / i > RM_SATURATION_SHARE:
            raise DegeneracyError(
                f"Simulated graphs saturated in {saturated} of {i} Robbins-Monro iterations"
            )

        step = cfg.step(i) * noisy_grad_log_post(theta, observed_stats, sample, prior)
        theta = theta + step
        trajectory.append(theta.copy())

        quiet_steps = quiet_steps + 1 if np.max(np.abs(step)) < cfg.tol else 0
        if quiet_steps >= cfg.persistence:
            converged = True
            break

    if converged:
        logger.info(f"Robbins-Monro converged after {i} iterations: θ* = {np.round(theta, 4)}")
    else:
        logger.warning(f"Robbins-Monro hit max_iters={cfg.max_iters} before tol={cfg.tol}")
    return RobbinsMonroResult(
        theta=theta,
        iterations=i,
        trajectory=np.vstack(trajectory),
        converged=converged,
        saturated_iterations=saturated,
    )


def estimate_true_hessian(
    theta_star: np.ndarray,
    sample: GraphSample,
    prior: GaussianPrior,
) -> np.ndarray:
    """
    H* = −cov(s(y′)) + ∇² log p(θ*), with the N − 1 covariance denominator.

    Raises:
        CalibrationInfeasibleError: fewer than d + 1 graphs, or H* not
            negative definite
    """
    d = prior.d
    if sample.stats.shape[1] != d:
        raise DomainError(f"Sample has {sample.stats.shape[1]} statistics, prior dimension {d}")
    if sample.size < d + 1:
        raise CalibrationInfeasibleError(f"Need at least {d + 1} simulated graphs, got {sample.size}")
    if not np.allclose(sample.theta, theta_star):
        logger.warning("Curvature sample was not simulated at θ*")

    cov = np.atleast_2d(np.cov(sample.stats, rowvar=False, ddof=1))
    h_star = -cov + hess_log_prior(prior)
    h_star = 0.5 * (h_star + h_star.T)
    try:
        cholesky(-h_star, lower=False)
    except LinAlgError as exc:
        raise CalibrationInfeasibleError(
            f"Estimated H* is not negative definite (eigenvalues {np.linalg.eigvalsh(h_star)})"
        ) from exc
    return h_star


def _upper_factor(hessian: np.ndarray, name: str) -> np.ndarray:
    """Upper-triangular R with positive diagonal and −H = RᵀR."""
    hessian = np.atleast_2d(np.asarray(hessian, dtype=np.float64))
    try:
        return cholesky(-0.5 * (hessian + hessian.T), lower=False)
    except LinAlgError as exc:
        raise NotNegativeDefiniteError(f"{name} is not negative definite") from exc


def build_map(
    theta_star: np.ndarray,
    h_star: np.ndarray,
    theta_pl: np.ndarray,
    h_pl: np.ndarray,
) -> CalibrationMap:
    """
    W = M⁻¹N where −H* = NᵀN and −Ĥ_PL = MᵀM, V = W⁻¹, λ = θ̂_PL − Wθ*.

    Raises:
        NotNegativeDefiniteError: either Hessian has no Cholesky factor
        NumericalError: WᵀĤ_PL W does not reproduce H*
    """
    theta_star = np.atleast_1d(np.asarray(theta_star, dtype=np.float64))
    theta_pl = np.atleast_1d(np.asarray(theta_pl, dtype=np.float64))
    n_factor = _upper_factor(h_star, "H*")
    m_factor = _upper_factor(h_pl, "Ĥ_PL")

    w = solve_triangular(m_factor, n_factor, lower=False)
    v = solve_triangular(n_factor, m_factor, lower=False)
    lam = theta_pl - w @ theta_star

    h_star = np.atleast_2d(h_star)
    h_pl = np.atleast_2d(h_pl)
    residual = np.linalg.norm(w.T @ h_pl @ w - h_star) / np.linalg.norm(h_star)
    if residual >= MAP_IDENTITY_TOL:
        raise NumericalError(f"Calibration map check failed: ‖WᵀĤW − H*‖/‖H*‖ = {residual:.2e}")

    logger.debug(f"Calibration map: log|det W| = {np.linalg.slogdet(w)[1]:.4f}")
    return CalibrationMap(
        theta_star=theta_star,
        theta_pl=theta_pl,
        h_star=h_star,
        h_pl=h_pl,
        w=w,
        v=v,
        lam=lam,
    )


def correct_sample(chain: McmcChain, cal_map: CalibrationMap) -> McmcChain:
    """
    Apply g⁻¹ row-wise. ``log_target`` becomes log π̃ at the corrected
    draws, which is the raw value plus log|det W|.
    """
    if chain.d != cal_map.d:
        raise DomainError(f"Chain has dimension {chain.d}, map {cal_map.d}")
    return replace(
        chain,
        draws=cal_map.inverse(chain.draws),
        log_target=chain.log_target + cal_map.log_abs_det_w,
    )


def calibrated_log_density(
    theta: np.ndarray,
    surface: LogDensity,
    cal_map: CalibrationMap,
) -> float:
    """log π̃(θ|y) = log|det W| + log π_PL(Wθ + λ | y)."""
    return cal_map.log_abs_det_w + surface.log_density(cal_map.forward(theta))


@dataclass(frozen=True, slots=True)
class CalibratedSurface:
    """The calibrated pseudo-posterior π̃ as a samplable target."""

    surface: LogDensity
    cal_map: CalibrationMap

    @property
    def d(self) -> int:
        return self.cal_map.d

    def log_density(self, theta: np.ndarray) -> float:
        return calibrated_log_density(theta, self.surface, self.cal_map)
