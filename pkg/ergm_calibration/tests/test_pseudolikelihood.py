import numpy as np
import pytest
from scipy.special import expit, logit

from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.exceptions import DomainError, SeparationError
from ergm_calibration.inference.pseudolikelihood import (
    PseudoPosteriorSurface, grad_log_pl, hess_log_pl, log_pl, log_prior, mple)
from ergm_calibration.statistics import change_stat_matrix
from ergm_calibration.tests.conftest import random_graph


def central_gradient(f, theta, h=1e-5):
    grad = np.empty_like(theta)
    for k in range(theta.size):
        step = np.zeros_like(theta)
        step[k] = h
        grad[k] = (f(theta + step) - f(theta - step)) / (2 * h)
    return grad


def central_jacobian(g, theta, h=1e-5):
    return np.column_stack([
        (g(theta + h * e) - g(theta - h * e)) / (2 * h) for e in np.eye(theta.size)
    ])


def irls(rows, response, iterations=100):
    beta = np.zeros(rows.shape[1])
    for _ in range(iterations):
        p = expit(rows @ beta)
        w = p * (1 - p)
        beta = beta + np.linalg.solve((rows.T * w) @ rows, rows.T @ (response - p))
    return beta


def test_log_pl_at_zero(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    assert log_pl(np.zeros(2), csm) == pytest.approx(-csm.n_dyads * np.log(2))


def test_log_pl_closed_form_empty_triangle():
    csm = change_stat_matrix(Graph(3), ModelSpec.parse(["edges"]))
    assert log_pl(np.array([-1.0]), csm) == pytest.approx(-3 * np.log1p(np.exp(-1.0)))


def test_log_pl_matches_naive_loop(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    theta = np.array([-2.1, 0.7])
    naive = 0.0
    for row, y in zip(csm.rows, csm.response):
        p = 1.0 / (1.0 + np.exp(-(row @ theta)))
        naive += np.log(p) if y else np.log(1.0 - p)
    assert log_pl(theta, csm) == pytest.approx(naive, abs=1e-10)


@pytest.mark.parametrize("instance", range(20))
def test_derivatives_match_finite_differences(instance, full_model, grade):
    rng = np.random.default_rng(instance)
    graph = random_graph(12, rng.uniform(0.2, 0.5), seed=100 + instance, attributes={"grade": grade})
    csm = change_stat_matrix(graph, full_model)
    theta = rng.normal(0.0, 0.3, size=full_model.d)

    grad = grad_log_pl(theta, csm)
    fd_grad = central_gradient(lambda t: log_pl(t, csm), theta)
    assert np.linalg.norm(fd_grad - grad) / max(np.linalg.norm(grad), 1.0) < 1e-6

    hess = hess_log_pl(theta, csm)
    fd_hess = central_jacobian(lambda t: grad_log_pl(t, csm), theta)
    assert np.linalg.norm(fd_hess - hess) / np.linalg.norm(hess) < 1e-4
    assert np.allclose(hess, hess.T)


def test_non_finite_theta_rejected(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    with pytest.raises(DomainError):
        log_pl(np.array([np.nan, 0.0]), csm)
    with pytest.raises(DomainError):
        grad_log_pl(np.zeros(3), csm)


def test_prior_density():
    prior = GaussianPrior.default(2, 30.0)
    expected = -np.log(2 * np.pi * 30.0) - 0.5 * (1.0 + 4.0) / 30.0
    assert log_prior(np.array([1.0, -2.0]), prior) == pytest.approx(expected)


# =========================
# Mode finding
# =========================

def test_mple_edges_only_is_logit_density(mple_graph):
    csm = change_stat_matrix(mple_graph, ModelSpec.parse(["edges"]))
    result = mple(csm)
    assert result.converged
    assert result.theta[0] == pytest.approx(logit(mple_graph.density), abs=1e-8)


def test_mple_matches_logistic_regression(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    result = mple(csm)
    assert result.theta == pytest.approx(irls(csm.rows, csm.response), abs=1e-6)
    assert result.grad_norm < 1e-6
    assert result.hessian == pytest.approx(hess_log_pl(result.theta, csm))


def test_prior_shrinks_the_mode(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    prior = GaussianPrior.default(2, 30.0)
    plain = mple(csm)
    shrunk = mple(csm, prior)
    assert shrunk.with_prior and not plain.with_prior
    assert np.linalg.norm(shrunk.theta) <= np.linalg.norm(plain.theta)
    surface = PseudoPosteriorSurface(csm, prior)
    assert np.max(np.abs(surface.gradient(shrunk.theta))) < 1e-6
    assert shrunk.hessian == pytest.approx(surface.hessian(shrunk.theta))


def test_mode_with_prior_does_not_depend_on_the_start(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    prior = GaussianPrior.default(2, 30.0)
    reference = mple(csm, prior).theta
    for start in np.random.default_rng(8).normal(size=(5, 2)):
        assert mple(csm, prior, theta0=start).theta == pytest.approx(reference, abs=1e-5)


def test_empty_graph_has_no_mple():
    csm = change_stat_matrix(Graph(6), ModelSpec.parse(["edges"]))
    with pytest.raises(SeparationError):
        mple(csm)


def test_surface_dimension_check(mple_graph, edges_triangles):
    csm = change_stat_matrix(mple_graph, edges_triangles)
    with pytest.raises(DomainError):
        PseudoPosteriorSurface(csm, GaussianPrior.default(3))
