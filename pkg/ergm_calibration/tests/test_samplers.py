from dataclasses import dataclass

import numpy as np
import pytest

from ergm_calibration.domain.models.chain import ProposalSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.exceptions import DomainError, InitializationError
from ergm_calibration.inference.diagnostics import ess
from ergm_calibration.inference.pseudolikelihood import log_prior
from ergm_calibration.inference.samplers import (approximate_exchange,
                                                 exchange_log_ratio,
                                                 exchange_sweep,
                                                 metropolis_hastings,
                                                 mh_pseudo_posterior)


@dataclass
class StandardNormal:
    d: int = 2

    def log_density(self, theta):
        return -0.5 * float(np.dot(theta, theta))


def proposal(d=2, scale=1.5):
    return ProposalSpec(tuning=np.eye(d), covariance=scale * np.eye(d))


def test_proposal_from_curvature():
    spec = ProposalSpec.from_curvature(
        tuning=np.array([0.5, 2.0]),
        prior_precision=np.eye(2) / 30,
        likelihood_precision=np.array([[4.0, 1.0], [1.0, 2.0]]),
    )
    inner = np.linalg.inv(np.eye(2) / 30 + np.array([[4.0, 1.0], [1.0, 2.0]]))
    t = np.diag([0.5, 2.0])
    assert spec.covariance == pytest.approx(t @ inner @ t)
    assert spec.factor @ spec.factor.T == pytest.approx(spec.covariance)


def test_standard_normal_moments():
    chain = mh_pseudo_posterior(StandardNormal(), proposal(), np.zeros(2),
                                iterations=30_000, burn_in=2_000, seed=3)
    assert chain.length == 30_000
    assert chain.burn_in == 2_000
    assert chain.mean() == pytest.approx([0.0, 0.0], abs=0.1)
    assert chain.draws.std(axis=0) == pytest.approx([1.0, 1.0], abs=0.1)
    assert 0.2 < chain.acceptance_rate < 0.8
    assert all(ess(chain.draws[:, k]) > 1_000 for k in range(2))


def test_log_target_follows_the_state():
    target = StandardNormal()
    chain = mh_pseudo_posterior(target, proposal(), np.ones(2), iterations=500, burn_in=0, seed=1)
    assert chain.log_target == pytest.approx([target.log_density(t) for t in chain.draws])


def test_same_seed_same_chain():
    a = mh_pseudo_posterior(StandardNormal(), proposal(), np.zeros(2), iterations=1_000, burn_in=100, seed=9)
    b = mh_pseudo_posterior(StandardNormal(), proposal(), np.zeros(2), iterations=1_000, burn_in=100, seed=9)
    assert np.array_equal(a.draws, b.draws)
    assert a.accepted == b.accepted


def test_start_must_be_finite():
    with pytest.raises(InitializationError):
        metropolis_hastings(lambda t: 0.0, proposal(), np.array([np.nan, 0.0]),
                            iterations=10, burn_in=0, seed=0)
    with pytest.raises(InitializationError):
        metropolis_hastings(lambda t: -np.inf, proposal(), np.zeros(2),
                            iterations=10, burn_in=0, seed=0)


def test_infinite_proposals_are_rejected():
    def half_plane(theta):
        return -0.5 * float(theta @ theta) if theta[0] > 0 else -np.inf

    chain = metropolis_hastings(half_plane, proposal(), np.array([1.0, 0.0]),
                                iterations=2_000, burn_in=0, seed=4)
    assert np.all(chain.draws[:, 0] > 0)


def test_dimension_mismatch():
    with pytest.raises(DomainError):
        mh_pseudo_posterior(StandardNormal(d=3), proposal(), np.zeros(2), iterations=10, burn_in=0)


# =========================
# Exchange
# =========================

def test_exchange_log_ratio():
    prior = GaussianPrior.default(2, 30.0)
    theta = np.array([-1.0, 0.2])
    candidate = np.array([-0.8, 0.1])
    observed = np.array([10.0, 3.0])
    auxiliary = np.array([12.0, 2.0])
    expected = (theta - candidate) @ (auxiliary - observed) + log_prior(candidate, prior) - log_prior(theta, prior)
    assert exchange_log_ratio(theta, candidate, observed, auxiliary, prior) == pytest.approx(expected)
    # An auxiliary graph equal to the observed one leaves only the prior ratio
    assert exchange_log_ratio(theta, candidate, observed, observed, prior) == pytest.approx(
        log_prior(candidate, prior) - log_prior(theta, prior)
    )


def test_exchange_chain(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    kwargs = dict(iterations=300, burn_in=50, aux_iters=200, seed=12)
    chain = approximate_exchange(oracle_graph, edges_triangles, prior, proposal(scale=0.5), np.zeros(2), **kwargs)
    again = approximate_exchange(oracle_graph, edges_triangles, prior, proposal(scale=0.5), np.zeros(2), **kwargs)
    assert chain.draws.shape == (300, 2)
    assert chain.labels == edges_triangles.labels
    assert np.array_equal(chain.draws, again.draws)
    assert 0 < chain.accepted < 300
    observed = np.array([4.0, 1.0])
    expected = chain.draws @ observed + np.array([log_prior(t, prior) for t in chain.draws])
    assert chain.log_target == pytest.approx(expected)


def test_exchange_sweep(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    reference = approximate_exchange(oracle_graph, edges_triangles, prior, proposal(scale=0.5), np.zeros(2),
                                     iterations=400, burn_in=50, aux_iters=100, seed=1)
    points = exchange_sweep(oracle_graph, edges_triangles, prior, proposal(scale=0.5), np.zeros(2),
                            reference, [10, 100], iterations=400, burn_in=50, bins=10, seed=2)
    assert [p.aux_iters for p in points] == [10, 100]
    assert all(0.0 <= p.tv <= 1.0 for p in points)
