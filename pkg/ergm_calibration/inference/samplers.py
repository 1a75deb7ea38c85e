"""
Random-walk Metropolis-Hastings over θ.

Two samplers share the same proposal machinery:

- ``mh_pseudo_posterior`` targets any ``LogDensity`` (the pseudo-posterior
  or its calibrated version) with the symmetric Gaussian proposal;
- ``approximate_exchange`` targets the true posterior by simulating an
  auxiliary graph at each proposed θ′ with a finite TNT run started at
  the observed graph.

Chains run ``burn_in`` iterations that are discarded, then keep
``iterations`` draws. Acceptance is counted over the kept part only.
"""

from __future__ import annotations

import time
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ergm_calibration.core.constant import (AEA_AUX_ITERS, CHAIN_BURN_IN,
                                            CHAIN_ITERATIONS, TV_BINS)
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.interfaces.log_density import LogDensity
from ergm_calibration.domain.models.chain import McmcChain, ProposalSpec
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.exceptions.numerical import (DomainError,
                                                   InitializationError)
from ergm_calibration.inference.diagnostics import tv_distance_2d
from ergm_calibration.inference.pseudolikelihood import log_prior
from ergm_calibration.inference.tnt import SeedLike, TntState


def _start(theta0: np.ndarray, d: int) -> np.ndarray:
    theta0 = np.atleast_1d(np.asarray(theta0, dtype=np.float64))
    if theta0.shape != (d,) or not np.all(np.isfinite(theta0)):
        raise InitializationError(f"θ₀ must be a finite vector of length {d}, got {theta0}")
    return theta0


def _check_lengths(iterations: int, burn_in: int) -> None:
    if iterations < 1 or burn_in < 0:
        raise ValueError(f"Need iterations >= 1 and burn_in >= 0, got {iterations}, {burn_in}")


def metropolis_hastings(
    log_density,
    proposal: ProposalSpec,
    theta0: np.ndarray,
    *,
    iterations: int,
    burn_in: int,
    seed: SeedLike,
    labels: Sequence[str] = (),
) -> McmcChain:
    """
    Random-walk MH on a plain callable ``log_density(θ) -> float``.

    Proposals whose log density is not finite are rejected.
    """
    _check_lengths(iterations, burn_in)
    theta = _start(theta0, proposal.d)
    current = float(log_density(theta))
    if not np.isfinite(current):
        raise InitializationError(f"Log target is {current} at θ₀ = {theta}")

    rng = np.random.default_rng(seed)
    total = burn_in + iterations
    increments = rng.standard_normal((total, proposal.d)) @ proposal.factor.T
    log_u = np.log(rng.random(total))

    draws = np.empty((iterations, proposal.d))
    log_target = np.empty(iterations)
    accepted = 0
    started = time.perf_counter()
    for it in range(total):
        candidate = theta + increments[it]
        value = float(log_density(candidate))
        if np.isfinite(value) and log_u[it] < value - current:
            theta, current = candidate, value
            if it >= burn_in:
                accepted += 1
        if it >= burn_in:
            draws[it - burn_in] = theta
            log_target[it - burn_in] = current

    chain = McmcChain(
        draws=draws,
        log_target=log_target,
        accepted=accepted,
        burn_in=burn_in,
        seed=seed if isinstance(seed, int) else None,
        wall_time=time.perf_counter() - started,
        labels=tuple(labels),
    )
    logger.info(f"MH chain: {iterations} draws, acceptance {chain.acceptance_rate:.3f}")
    return chain


def mh_pseudo_posterior(
    surface: LogDensity,
    proposal: ProposalSpec,
    theta0: np.ndarray,
    *,
    iterations: int = CHAIN_ITERATIONS,
    burn_in: int = CHAIN_BURN_IN,
    seed: SeedLike = None,
    labels: Sequence[str] = (),
) -> McmcChain:
    """Sample ``surface`` with the symmetric Gaussian random walk ``proposal``."""
    if surface.d != proposal.d:
        raise DomainError(f"Target has dimension {surface.d}, proposal {proposal.d}")
    logger.debug(f"Pseudo-posterior chain: burn-in {burn_in}, iterations {iterations}")
    return metropolis_hastings(
        surface.log_density, proposal, theta0,
        iterations=iterations, burn_in=burn_in, seed=seed, labels=labels,
    )


# =========================
# Approximate exchange
# =========================

def exchange_log_ratio(
    theta: np.ndarray,
    candidate: np.ndarray,
    observed_stats: np.ndarray,
    auxiliary_stats: np.ndarray,
    prior: GaussianPrior,
) -> float:
    """
    log of q(y′|θ) q(y|θ′) p(θ′) / [q(y′|θ′) q(y|θ) p(θ)], which for a
    symmetric proposal is (θ − θ′)ᵀ(s(y′) − s(y)) + log p(θ′) − log p(θ).
    """
    return float(
        (theta - candidate) @ (auxiliary_stats - observed_stats)
        + log_prior(candidate, prior)
        - log_prior(theta, prior)
    )


def approximate_exchange(
    observed: Graph,
    model: ModelSpec,
    prior: GaussianPrior,
    proposal: ProposalSpec,
    theta0: np.ndarray,
    *,
    iterations: int = CHAIN_ITERATIONS,
    burn_in: int = CHAIN_BURN_IN,
    aux_iters: int = AEA_AUX_ITERS,
    seed: SeedLike = None,
) -> McmcChain:
    """
    Approximate exchange algorithm.

    At every iteration an auxiliary graph y′ is drawn by ``aux_iters`` TNT
    steps at θ′ started from the observed graph; the toggles are then
    undone so the next iteration starts from y again. ``log_target``
    holds θᵀs(y) + log p(θ), the posterior up to the unknown log z(θ).
    """
    _check_lengths(iterations, burn_in)
    if aux_iters < 1:
        raise ValueError(f"aux_iters must be >= 1, got {aux_iters}")
    if prior.d != model.d or proposal.d != model.d:
        raise DomainError(f"Model has {model.d} terms; prior {prior.d}, proposal {proposal.d}")
    theta = _start(theta0, model.d)

    state = TntState.start(model, observed)
    observed_stats = state.stats.copy()
    rng = np.random.default_rng(seed)
    total = burn_in + iterations
    increments = rng.standard_normal((total, model.d)) @ proposal.factor.T
    log_u = np.log(rng.random(total))

    draws = np.empty((iterations, model.d))
    log_target = np.empty(iterations)
    accepted = 0
    logger.debug(f"AEA: aux_iters={aux_iters}, burn-in {burn_in}, iterations {iterations}")
    started = time.perf_counter()
    for it in range(total):
        candidate = theta + increments[it]
        _, _, logged = state.advance(candidate, rng, aux_iters, record_toggles=True)
        auxiliary_stats = state.stats.copy()
        state.rewind(logged, observed_stats)
        ratio = exchange_log_ratio(theta, candidate, observed_stats, auxiliary_stats, prior)
        if log_u[it] < ratio:
            theta = candidate
            if it >= burn_in:
                accepted += 1
        if it >= burn_in:
            draws[it - burn_in] = theta
            log_target[it - burn_in] = theta @ observed_stats + log_prior(theta, prior)

    chain = McmcChain(
        draws=draws,
        log_target=log_target,
        accepted=accepted,
        burn_in=burn_in,
        seed=seed if isinstance(seed, int) else None,
        wall_time=time.perf_counter() - started,
        labels=model.labels,
    )
    logger.info(f"AEA chain: {iterations} draws, acceptance {chain.acceptance_rate:.3f}")
    return chain


@dataclass(frozen=True, slots=True)
class ExchangeSweepPoint:
    aux_iters: int
    tv: float
    chain: McmcChain


def exchange_sweep(
    observed: Graph,
    model: ModelSpec,
    prior: GaussianPrior,
    proposal: ProposalSpec,
    theta0: np.ndarray,
    reference: McmcChain,
    aux_iters: Sequence[int],
    *,
    iterations: int = CHAIN_ITERATIONS,
    burn_in: int = CHAIN_BURN_IN,
    bins: int = TV_BINS,
    seed: SeedLike = None,
) -> list[ExchangeSweepPoint]:
    """
    Run the exchange sampler once per auxiliary-chain length and measure
    each chain's TV distance to ``reference`` (two-parameter models).
    """
    streams = np.random.default_rng(seed).spawn(len(aux_iters))
    points = []
    for m, stream in zip(aux_iters, streams):
        chain = approximate_exchange(
            observed, model, prior, proposal, theta0,
            iterations=iterations, burn_in=burn_in, aux_iters=m, seed=stream,
        )
        tv = tv_distance_2d(chain.draws, reference.draws, bins=bins)
        logger.info(f"AEA sweep: aux_iters={m}, TV to reference {tv:.3f}")
        points.append(ExchangeSweepPoint(aux_iters=m, tv=tv, chain=chain))
    return points
