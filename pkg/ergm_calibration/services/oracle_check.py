"""
Self-test of the samplers against exact enumeration on a tiny graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergm_calibration.core.config import RunConfig
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.results import PosteriorGrid
from ergm_calibration.exceptions.convergence import NonConvergenceError
from ergm_calibration.inference.calibration import (RobbinsMonroConfig,
                                                    estimate_true_hessian)
from ergm_calibration.inference.diagnostics import ess
from ergm_calibration.inference.oracle import (enumerate_statistics,
                                               exact_mle,
                                               exact_posterior_grid,
                                               grid_axes, moments)
from ergm_calibration.inference.pseudolikelihood import hess_log_prior
from ergm_calibration.inference.tnt import simulate_stats
from ergm_calibration.services.calibrator import ErgmCalibrator

# Histogram bins per marginal when comparing with the exact grid
_MARGINAL_BINS = 20


def fixture_graph(n: int) -> Graph:
    """A triangle on nodes 0-2 with a path through the remaining nodes."""
    edges = [(0, 1)] if n == 2 else [(0, 1), (1, 2), (0, 2)]
    edges += [(k - 1, k) for k in range(3, n)]
    return Graph.from_edges(n, edges)


@dataclass(frozen=True, slots=True)
class OracleCheck:
    name: str
    passed: bool
    detail: str

    def to_line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _standard_errors(stats: np.ndarray) -> np.ndarray:
    se = np.zeros(stats.shape[1])
    for k in range(stats.shape[1]):
        column = stats[:, k]
        if np.ptp(column) > 0:
            se[k] = column.std(ddof=1) / np.sqrt(ess(column))
    return se


def _marginal_tv(draws: np.ndarray, axis: np.ndarray, marginal: np.ndarray) -> float:
    """TV between a sample histogram and a gridded marginal, on merged cells."""
    step = axis[1] - axis[0]
    edges = np.append(axis - step / 2, axis[-1] + step / 2)
    counts, _ = np.histogram(draws, bins=edges)
    exact = marginal * step
    groups = np.arange(axis.size) * _MARGINAL_BINS // axis.size
    f = np.bincount(groups, weights=counts) / max(draws.size, 1)
    g = np.bincount(groups, weights=exact)
    g = g / g.sum()
    return float(0.5 * np.abs(f - g).sum())


def _enumeration_checks(
    cfg: RunConfig,
    calibrator: ErgmCalibrator,
    gray: np.ndarray,
    rng: np.random.Generator,
) -> list[OracleCheck]:
    graph, model = calibrator.graph, calibrator.model
    full = enumerate_statistics(model, graph, order="full")
    checks: list[OracleCheck] = []
    for theta in (np.asarray(t, dtype=np.float64) for t in cfg.oracle.thetas):
        a = moments(theta, gray, graph.n)
        b = moments(theta, full, graph.n)
        same = abs(a.log_z - b.log_z) < 1e-9 and np.allclose(a.mean_stats, b.mean_stats, atol=1e-9)
        checks.append(OracleCheck(
            f"enumeration orders at θ={theta.tolist()}", bool(same),
            f"log z {a.log_z:.10f} vs {b.log_z:.10f}",
        ))

        sample = simulate_stats(theta, model, graph, draws=cfg.oracle.tnt_draws, thin=10, seed=rng)
        se = _standard_errors(sample.stats)
        gap = np.abs(sample.mean() - a.mean_stats)
        ok = bool(np.all(gap <= cfg.oracle.tolerance_se * se + 1e-12))
        checks.append(OracleCheck(
            f"TNT moments at θ={theta.tolist()}", ok,
            f"|mean − exact| = {np.round(gap, 4).tolist()}, SE = {np.round(se, 4).tolist()}",
        ))
    return checks


def _exact_grid(cfg: RunConfig, calibrator: ErgmCalibrator, gray: np.ndarray) -> PosteriorGrid:
    graph, model, prior = calibrator.graph, calibrator.model, calibrator.prior
    exact_map = exact_mle(graph, model, prior=prior)
    curvature = moments(exact_map, gray, graph.n).cov_stats + prior.precision
    sds = np.sqrt(np.diag(np.linalg.inv(curvature)))
    axes = grid_axes(exact_map, cfg.oracle.grid_sds * sds, cfg.oracle.grid_points)
    return exact_posterior_grid(graph, model, prior, axes)


def _curvature_check(
    cfg: RunConfig,
    calibrator: ErgmCalibrator,
    theta: np.ndarray,
    gray: np.ndarray,
    rng: np.random.Generator,
) -> OracleCheck:
    graph, model, prior = calibrator.graph, calibrator.model, calibrator.prior
    c, replicates_n = cfg.calibration, cfg.oracle.replicates
    exact = moments(theta, gray, graph.n)
    h_exact = -exact.cov_stats + hess_log_prior(prior)
    replicates = np.stack([
        estimate_true_hessian(
            theta,
            simulate_stats(theta, model, graph, draws=c.hessian_graphs, burn=c.burn, thin=c.thin, seed=rng),
            prior,
        )
        for _ in range(replicates_n)
    ])
    se = replicates.std(axis=0, ddof=1) / np.sqrt(replicates_n)
    gap = np.abs(replicates.mean(axis=0) - h_exact)
    return OracleCheck(
        "curvature estimate vs exact",
        bool(np.all(gap <= cfg.oracle.tolerance_se * se + 1e-9)),
        f"max |H − H_exact| = {gap.max():.4f}",
    )


def run_oracle_checks(cfg: RunConfig, calibrator: ErgmCalibrator) -> list[OracleCheck]:
    """
    Compare enumeration orders, TNT moments, the Robbins-Monro mode, the
    curvature estimate and the exchange sampler with exact results.

    Each part is timed as its own stage of ``calibrator``.
    """
    oracle = cfg.oracle
    graph, model = calibrator.graph, calibrator.model
    rng = calibrator.rng("oracle")

    gray = calibrator.stage("exact enumeration", enumerate_statistics, model, graph, order="gray")
    checks = calibrator.stage("enumeration checks", _enumeration_checks, cfg, calibrator, gray, rng)
    grid = calibrator.stage("exact posterior grid", _exact_grid, cfg, calibrator, gray)
    spacing = max(a[1] - a[0] for a in grid.axes)

    # Start from the exact MLE so that the search has to absorb the prior
    try:
        start = exact_mle(graph, model)
    except NonConvergenceError:
        start = calibrator.mode().theta
    rm_cfg = RobbinsMonroConfig(
        alpha=oracle.rm_alpha,
        tol=oracle.rm_tol,
        max_iters=oracle.rm_max_iters,
        persistence=cfg.calibration.persistence,
        graphs=cfg.calibration.graphs,
        burn=cfg.calibration.burn,
        thin=cfg.calibration.thin,
    )
    found = calibrator.find_map(rm_cfg, theta0=start)
    distance = float(np.max(np.abs(found.theta - grid.argmax)))
    checks.append(OracleCheck(
        "Robbins-Monro mode vs grid argmax",
        distance <= oracle.map_tolerance + spacing / 2,
        f"θ* = {np.round(found.theta, 4).tolist()}, argmax = {np.round(grid.argmax, 4).tolist()}",
    ))

    checks.append(calibrator.stage("curvature check", _curvature_check, cfg, calibrator, found.theta, gray, rng))

    chain = calibrator.sample_exchange(
        iterations=oracle.iterations,
        burn_in=max(oracle.iterations // 4, 1),
        aux_iters=oracle.aux_iters,
        tuning=cfg.sampler.tuning,
    )
    for k, axis in enumerate(grid.axes):
        tv = _marginal_tv(chain.draws[:, k], axis, grid.marginal(k))
        checks.append(OracleCheck(
            f"exchange marginal {model.labels[k]} vs exact grid", tv <= oracle.tv_limit,
            f"TV = {tv:.3f}",
        ))

    for check in checks:
        (logger.info if check.passed else logger.error)(check.to_line())
    return checks
