"""
Brute-force ERGM computations on tiny graphs.

Every one of the 2^D graphs on n ≤ 6 nodes is visited, so z(θ) and the
moments of s(y) are exact up to floating point. Two visiting orders are
available: a Gray-code walk that updates s(y) by one change statistic
per graph, and a full recount in reversed bit order that shares no code
with the change-statistic kernels.
"""

from __future__ import annotations

from collections.abc import Sequence
from typing import Literal

import numpy as np
from scipy.optimize import minimize
from scipy.special import logsumexp

from ergm_calibration.core import kernels
from ergm_calibration.core.constant import ORACLE_MAX_NODES
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.domain.models.results import (EnumerationResult,
                                                    PosteriorGrid)
from ergm_calibration.exceptions.convergence import NonConvergenceError
from ergm_calibration.exceptions.numerical import SizeCapError
from ergm_calibration.inference.pseudolikelihood import log_prior
from ergm_calibration.statistics.evaluator import (compile_terms,
                                                   sufficient_statistics)

Order = Literal["gray", "full"]

_GRID_CHUNK = 512


def _empty_like(template: Graph | int) -> Graph:
    if isinstance(template, Graph):
        n, attributes = template.n, template.attributes
    else:
        n, attributes = int(template), None
    if n > ORACLE_MAX_NODES:
        raise SizeCapError(f"Exact enumeration supports n <= {ORACLE_MAX_NODES}, got n = {n}")
    if n < 2:
        raise SizeCapError(f"Exact enumeration needs at least two nodes, got n = {n}")
    return Graph(n, attributes=attributes)


def enumerate_statistics(
    model: ModelSpec,
    template: Graph | int,
    *,
    order: Order = "gray",
) -> np.ndarray:
    """
    s(y) for all 2^D graphs with the node set (and attributes) of
    ``template``; one row per graph.
    """
    graph = _empty_like(template)
    dyads = graph.dyad_list()
    total = 1 << len(dyads)
    stats = np.empty((total, model.d))

    if order == "gray":
        table = compile_terms(model, graph)
        buffers = graph.buffers()
        current = sufficient_statistics(graph, model)
        delta = np.empty(model.d)
        stats[0] = current
        for k in range(1, total):
            dyad = dyads[(k & -k).bit_length() - 1]
            kernels.change_vector(buffers.adj, buffers.degree, dyad.i, dyad.j,
                                  table.codes, table.params, table.indicators, delta)
            current = current - delta if graph.has_edge(dyad) else current + delta
            graph.toggle(dyad)
            stats[k] = current
    elif order == "full":
        top = len(dyads) - 1
        for mask in range(total):
            edges = [(dyads[k].i, dyads[k].j) for k in range(len(dyads)) if mask >> (top - k) & 1]
            stats[mask] = sufficient_statistics(
                Graph.from_edges(graph.n, edges, attributes=graph.attributes), model
            )
    else:
        raise ValueError(f"Unknown enumeration order '{order}'")
    return stats


def moments(theta: np.ndarray, stats: np.ndarray, n: int) -> EnumerationResult:
    """log z(θ), E[s(y)] and Var[s(y)] from an enumerated statistic table."""
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    logits = stats @ theta
    log_z = float(logsumexp(logits))
    weights = np.exp(logits - log_z)
    mean = weights @ stats
    centred = stats - mean
    cov = (centred.T * weights) @ centred
    return EnumerationResult(log_z=log_z, mean_stats=mean, cov_stats=0.5 * (cov + cov.T), n=n)


def enumerate_ergm(
    theta: np.ndarray,
    model: ModelSpec,
    template: Graph | int,
    *,
    order: Order = "gray",
) -> EnumerationResult:
    """
    Exact normaliser and moments of p(·|θ) over all graphs on the nodes
    of ``template``.

    Raises:
        SizeCapError: more than six nodes
    """
    stats = enumerate_statistics(model, template, order=order)
    n = template.n if isinstance(template, Graph) else int(template)
    return moments(theta, stats, n)


def exact_log_likelihood(
    theta: np.ndarray,
    observed: Graph,
    model: ModelSpec,
    *,
    stats: np.ndarray | None = None,
) -> float:
    """θᵀs(y) − log z(θ)."""
    if stats is None:
        stats = enumerate_statistics(model, observed)
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    return float(theta @ sufficient_statistics(observed, model) - logsumexp(stats @ theta))


def exact_mle(
    observed: Graph,
    model: ModelSpec,
    *,
    prior: GaussianPrior | None = None,
    theta0: np.ndarray | None = None,
    grad_tol: float = 1e-8,
) -> np.ndarray:
    """
    Maximiser of the exact log-likelihood, by BFGS on s(y) − E[s(y)].
    With ``prior`` the exact posterior mode is returned instead.

    Raises:
        NonConvergenceError: the gradient did not vanish (e.g. s(y) on the
            boundary of its convex hull, where no MLE exists)
    """
    stats = enumerate_statistics(model, observed)
    observed_stats = sufficient_statistics(observed, model)

    def negated(theta: np.ndarray) -> tuple[float, np.ndarray]:
        result = moments(theta, stats, observed.n)
        value = result.log_z - theta @ observed_stats
        grad = result.mean_stats - observed_stats
        if prior is not None:
            value -= log_prior(theta, prior)
            grad = grad + prior.precision @ (theta - prior.mean)
        return value, grad

    start = np.zeros(model.d) if theta0 is None else np.asarray(theta0, dtype=np.float64)
    fit = minimize(negated, start, jac=True, method="BFGS", options={"gtol": grad_tol})
    if np.max(np.abs(negated(fit.x)[1])) > 1e3 * grad_tol:
        raise NonConvergenceError(f"Exact maximisation did not converge: {fit.message}")
    return np.asarray(fit.x)


def grid_axes(
    center: Sequence[float],
    half_width: float | Sequence[float],
    points: int,
) -> tuple[np.ndarray, ...]:
    """Evenly spaced axes of ``points`` values on center ± half_width."""
    center = np.asarray(center, dtype=np.float64)
    half = np.broadcast_to(np.asarray(half_width, dtype=np.float64), center.shape)
    return tuple(np.linspace(c - h, c + h, points) for c, h in zip(center, half))


def exact_posterior_grid(
    observed: Graph,
    model: ModelSpec,
    prior: GaussianPrior,
    axes: Sequence[np.ndarray],
) -> PosteriorGrid:
    """
    π(θ|y) ∝ p(y|θ) p(θ) on the rectangular grid spanned by ``axes``,
    normalised so that the density integrates to one by cell-sum quadrature.
    """
    axes = tuple(np.asarray(a, dtype=np.float64) for a in axes)
    if len(axes) != model.d:
        raise ValueError(f"Need {model.d} grid axes, got {len(axes)}")
    if any(a.size < 2 or not np.all(np.isfinite(a)) or np.any(np.diff(a) <= 0) for a in axes):
        raise ValueError("Grid axes must be finite, increasing and have at least two points")

    stats = enumerate_statistics(model, observed)
    observed_stats = sufficient_statistics(observed, model)
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([m.ravel() for m in mesh], axis=1)

    log_post = np.empty(points.shape[0])
    for start in range(0, points.shape[0], _GRID_CHUNK):
        chunk = points[start:start + _GRID_CHUNK]
        log_z = logsumexp(chunk @ stats.T, axis=1)
        log_post[start:start + _GRID_CHUNK] = chunk @ observed_stats - log_z
    diff = points - prior.mean
    log_post += prior.log_norm - 0.5 * np.einsum("ij,jk,ik->i", diff, prior.precision, diff)

    cell_volume = float(np.prod([a[1] - a[0] for a in axes]))
    log_density = log_post - logsumexp(log_post) - np.log(cell_volume)
    density = np.exp(log_density)
    shape = tuple(a.size for a in axes)
    best = int(np.argmax(log_post))
    return PosteriorGrid(
        axes=axes,
        log_density=log_density.reshape(shape),
        density=density.reshape(shape),
        argmax=points[best],
        cell_volume=cell_volume,
    )


def exact_log_posterior(
    theta: np.ndarray,
    observed: Graph,
    model: ModelSpec,
    prior: GaussianPrior,
    *,
    stats: np.ndarray | None = None,
) -> float:
    """Unnormalised log π(θ|y) = log p(y|θ) + log p(θ)."""
    return exact_log_likelihood(theta, observed, model, stats=stats) + log_prior(theta, prior)
