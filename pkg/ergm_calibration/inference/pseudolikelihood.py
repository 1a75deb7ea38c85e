"""
Log pseudolikelihood of an ERGM, the Gaussian log prior, and the
pseudo-posterior mode with its analytic curvature.

The pseudolikelihood is the likelihood of a logistic regression of the
dyad states on their change statistics, so all three derivatives are
closed-form in the linear predictor η = δ θ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import expit

from ergm_calibration.core.constant import (ETA_CLAMP, MPLE_DIVERGENCE_BOUND,
                                            MPLE_GRAD_TOL, MPLE_MAX_ITERS,
                                            MPLE_STEP_TOL, NEWTON_POLISH_ITERS)
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.change_stats import ChangeStatMatrix
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.domain.models.results import MpleResult
from ergm_calibration.exceptions.convergence import NonConvergenceError
from ergm_calibration.exceptions.numerical import DomainError, SeparationError


def _check_theta(theta: np.ndarray, d: int) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    if theta.shape != (d,):
        raise DomainError(f"θ has shape {theta.shape}, expected ({d},)")
    if not np.all(np.isfinite(theta)):
        raise DomainError(f"θ must be finite, got {theta}")
    return theta


# =========================
# Pseudolikelihood
# =========================

def log_pl(theta: np.ndarray, csm: ChangeStatMatrix) -> float:
    """Σ_k y_k η_k − log(1 + e^{η_k})."""
    theta = _check_theta(theta, csm.d)
    eta = csm.rows @ theta
    return float(np.sum(csm.response * eta - np.logaddexp(0.0, eta)))


def grad_log_pl(theta: np.ndarray, csm: ChangeStatMatrix) -> np.ndarray:
    theta = _check_theta(theta, csm.d)
    eta = csm.rows @ theta
    return csm.rows.T @ (csm.response - expit(eta))


def hess_log_pl(theta: np.ndarray, csm: ChangeStatMatrix) -> np.ndarray:
    theta = _check_theta(theta, csm.d)
    eta = np.clip(csm.rows @ theta, -ETA_CLAMP, ETA_CLAMP)
    p = expit(eta)
    weights = p * (1.0 - p)
    hess = -(csm.rows.T * weights) @ csm.rows
    return 0.5 * (hess + hess.T)


# =========================
# Prior
# =========================

def log_prior(theta: np.ndarray, prior: GaussianPrior) -> float:
    theta = _check_theta(theta, prior.d)
    diff = theta - prior.mean
    return float(prior.log_norm - 0.5 * diff @ prior.precision @ diff)


def grad_log_prior(theta: np.ndarray, prior: GaussianPrior) -> np.ndarray:
    theta = _check_theta(theta, prior.d)
    return -prior.precision @ (theta - prior.mean)


def hess_log_prior(prior: GaussianPrior) -> np.ndarray:
    return -prior.precision


# =========================
# Pseudo-posterior
# =========================

@dataclass(frozen=True, slots=True)
class PseudoPosteriorSurface:
    """
    log π_PL(θ|y) = log_pl(θ) + log_prior(θ), without the evidence term.
    """

    csm: ChangeStatMatrix
    prior: GaussianPrior

    def __post_init__(self) -> None:
        if self.csm.d != self.prior.d:
            raise DomainError(
                f"Change statistics have {self.csm.d} columns but the prior has dimension {self.prior.d}"
            )

    @property
    def d(self) -> int:
        return self.csm.d

    def log_density(self, theta: np.ndarray) -> float:
        return log_pl(theta, self.csm) + log_prior(theta, self.prior)

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        return grad_log_pl(theta, self.csm) + grad_log_prior(theta, self.prior)

    def hessian(self, theta: np.ndarray) -> np.ndarray:
        return hess_log_pl(theta, self.csm) + hess_log_prior(self.prior)


# =========================
# Mode finding
# =========================

def mple(
    csm: ChangeStatMatrix,
    prior: GaussianPrior | None = None,
    *,
    theta0: np.ndarray | None = None,
    grad_tol: float = MPLE_GRAD_TOL,
    step_tol: float = MPLE_STEP_TOL,
    max_iters: int = MPLE_MAX_ITERS,
    divergence_bound: float = MPLE_DIVERGENCE_BOUND,
) -> MpleResult:
    """
    Maximise log_pl (+ log_prior when ``prior`` is given).

    BFGS on the analytic gradient does the bulk of the work; a few
    Newton steps on the analytic Hessian then pin the gradient below
    ``grad_tol``. The returned Hessian is that of the maximised objective.

    Raises:
        SeparationError: response is constant or ‖θ̂‖_∞ > divergence_bound
        NonConvergenceError: gradient tolerance not met within max_iters
    """
    if not csm.has_both_outcomes:
        raise SeparationError(
            "The observed graph is empty or complete; the pseudolikelihood has no maximiser"
        )
    d = csm.d
    if prior is not None and prior.d != d:
        raise DomainError(f"Prior dimension {prior.d} does not match {d} model terms")

    def objective(theta: np.ndarray) -> float:
        value = log_pl(theta, csm)
        if prior is not None:
            value += log_prior(theta, prior)
        return value

    def gradient(theta: np.ndarray) -> np.ndarray:
        grad = grad_log_pl(theta, csm)
        if prior is not None:
            grad = grad + grad_log_prior(theta, prior)
        return grad

    def hessian(theta: np.ndarray) -> np.ndarray:
        hess = hess_log_pl(theta, csm)
        if prior is not None:
            hess = hess + hess_log_prior(prior)
        return hess

    def negated(theta: np.ndarray) -> tuple[float, np.ndarray]:
        if np.max(np.abs(theta)) > 10 * divergence_bound:
            return np.inf, np.zeros(d)
        return -objective(theta), -gradient(theta)

    start = np.zeros(d) if theta0 is None else _check_theta(theta0, d)
    logger.debug(f"MPLE start: d={d}, dyads={csm.n_dyads}, prior={'yes' if prior else 'no'}")

    fit = minimize(
        negated,
        start,
        jac=True,
        method="BFGS",
        options={"gtol": grad_tol, "maxiter": max_iters, "xrtol": step_tol},
    )
    theta = np.asarray(fit.x, dtype=np.float64)
    iterations = int(fit.nit)

    # Newton polish
    value = objective(theta)
    grad = gradient(theta)
    for _ in range(NEWTON_POLISH_ITERS):
        if np.max(np.abs(grad)) < grad_tol or iterations >= max_iters:
            break
        try:
            step = np.linalg.solve(hessian(theta), grad)
        except np.linalg.LinAlgError:
            break
        # Near the mode the objective change drops below rounding, so a
        # smaller gradient also counts as progress.
        scale = 1.0
        while scale > 1e-8:
            candidate = theta - scale * step
            candidate_value = objective(candidate)
            candidate_grad = gradient(candidate)
            if (candidate_value >= value
                    or np.max(np.abs(candidate_grad)) < np.max(np.abs(grad))):
                break
            scale *= 0.5
        else:
            break
        iterations += 1
        moved = np.max(np.abs(candidate - theta))
        theta, value, grad = candidate, candidate_value, candidate_grad
        if moved < step_tol:
            break

    grad_norm = float(np.max(np.abs(grad)))
    if np.max(np.abs(theta)) > divergence_bound:
        raise SeparationError(
            f"‖θ̂‖_∞ = {np.max(np.abs(theta)):.1f} exceeds {divergence_bound}; "
            "the maximum pseudolikelihood estimate may not exist"
        )
    if grad_norm >= grad_tol:
        raise NonConvergenceError(
            f"MPLE stopped after {iterations} iterations with ‖∇‖_∞ = {grad_norm:.3g}"
        )

    logger.info(f"MPLE converged in {iterations} iterations: θ̂ = {np.round(theta, 4)}")
    return MpleResult(
        theta=theta,
        hessian=hessian(theta),
        converged=True,
        iterations=iterations,
        grad_norm=grad_norm,
        with_prior=prior is not None,
    )
