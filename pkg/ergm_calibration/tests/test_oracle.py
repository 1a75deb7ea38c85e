import numpy as np
import pytest
from scipy.special import expit

from ergm_calibration.domain.models.graph import Graph, NodeAttribute
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.exceptions import SizeCapError
from ergm_calibration.inference.oracle import (enumerate_ergm,
                                               enumerate_statistics,
                                               exact_log_likelihood,
                                               exact_log_posterior, exact_mle,
                                               exact_posterior_grid,
                                               grid_axes, moments)
from ergm_calibration.statistics import sufficient_statistics


def five_node_template(grade):
    values = grade.values()[:5]
    return Graph(5, attributes={"grade": NodeAttribute.from_values("grade", values)})


def sorted_rows(stats):
    stats = np.round(stats, 9)
    return stats[np.lexsort(stats.T[::-1])]


def test_three_node_edges_model_at_zero():
    result = enumerate_ergm(np.zeros(1), ModelSpec.parse(["edges"]), 3)
    assert result.log_z == pytest.approx(3 * np.log(2))
    assert result.mean_stats == pytest.approx([1.5])
    assert result.cov_stats == pytest.approx([[0.75]])
    assert result.n == 3


@pytest.mark.parametrize("theta", [-1.3, 0.4, 2.0])
def test_edges_model_is_binomial(theta):
    result = enumerate_ergm(np.array([theta]), ModelSpec.parse(["edges"]), 4)
    p = expit(theta)
    assert result.mean_stats == pytest.approx([6 * p])
    assert result.cov_stats == pytest.approx([[6 * p * (1 - p)]])
    assert result.log_z == pytest.approx(6 * np.log1p(np.exp(theta)))


def test_statistic_table_covers_every_graph(full_model, grade):
    template = five_node_template(grade)
    stats = enumerate_statistics(full_model, template)
    assert stats.shape == (1 << 10, full_model.d)
    assert np.array_equal(stats[0], np.zeros(full_model.d))
    assert stats[:, 0].max() == 10


def test_gray_and_full_orders_agree_as_multisets(full_model, grade):
    template = five_node_template(grade)
    gray = enumerate_statistics(full_model, template, order="gray")
    full = enumerate_statistics(full_model, template, order="full")
    assert np.allclose(sorted_rows(gray), sorted_rows(full), atol=1e-9)


def test_orders_give_the_same_moments(edges_triangles):
    theta = np.array([-0.4, 0.7])
    a = enumerate_ergm(theta, edges_triangles, 5, order="gray")
    b = enumerate_ergm(theta, edges_triangles, 5, order="full")
    assert a.log_z == pytest.approx(b.log_z, abs=1e-10)
    assert np.allclose(a.mean_stats, b.mean_stats, atol=1e-10)
    assert np.allclose(a.cov_stats, b.cov_stats, atol=1e-10)


def test_unknown_order(edges_triangles):
    with pytest.raises(ValueError):
        enumerate_statistics(edges_triangles, 4, order="random")


@pytest.mark.parametrize("n", [1, 7])
def test_size_cap(edges_triangles, n):
    with pytest.raises(SizeCapError):
        enumerate_ergm(np.zeros(2), edges_triangles, n)


def test_log_normaliser_derivatives(edges_triangles):
    stats = enumerate_statistics(edges_triangles, 4)
    theta = np.array([0.3, -0.6])
    h = 1e-5
    base = moments(theta, stats, 4)
    for k in range(2):
        step = np.eye(2)[k] * h
        up = moments(theta + step, stats, 4)
        down = moments(theta - step, stats, 4)
        assert (up.log_z - down.log_z) / (2 * h) == pytest.approx(base.mean_stats[k], abs=1e-6)
        assert (up.mean_stats - down.mean_stats) / (2 * h) == pytest.approx(base.cov_stats[k], abs=1e-5)


def test_exact_mle_matches_observed_statistics(oracle_graph, edges_triangles):
    theta = exact_mle(oracle_graph, edges_triangles)
    expected = enumerate_ergm(theta, edges_triangles, oracle_graph).mean_stats
    assert expected == pytest.approx(sufficient_statistics(oracle_graph, edges_triangles), abs=1e-6)
    assert exact_log_likelihood(theta, oracle_graph, edges_triangles) > exact_log_likelihood(
        theta + 0.1, oracle_graph, edges_triangles
    )


def test_exact_posterior_mode_balances_prior(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    theta = exact_mle(oracle_graph, edges_triangles, prior=prior)
    result = enumerate_ergm(theta, edges_triangles, oracle_graph)
    grad = (sufficient_statistics(oracle_graph, edges_triangles) - result.mean_stats
            - prior.precision @ (theta - prior.mean))
    assert np.max(np.abs(grad)) < 1e-5


def test_posterior_grid_is_normalised(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    mode = exact_mle(oracle_graph, edges_triangles, prior=prior)
    axes = grid_axes(mode, [4.0, 6.0], 61)
    grid = exact_posterior_grid(oracle_graph, edges_triangles, prior, axes)
    assert grid.density.shape == (61, 61)
    assert grid.density.sum() * grid.cell_volume == pytest.approx(1.0)
    for k in range(2):
        spacing = axes[k][1] - axes[k][0]
        assert grid.marginal(k).sum() * spacing == pytest.approx(1.0)
        assert abs(grid.argmax[k] - mode[k]) <= spacing


def test_grid_log_density_matches_unnormalised_posterior(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    axes = grid_axes([0.0, 0.0], 1.0, 5)
    grid = exact_posterior_grid(oracle_graph, edges_triangles, prior, axes)
    a = np.array([axes[0][1], axes[1][3]])
    b = np.array([axes[0][4], axes[1][0]])
    gap = grid.log_density[1, 3] - grid.log_density[4, 0]
    expected = (exact_log_posterior(a, oracle_graph, edges_triangles, prior)
                - exact_log_posterior(b, oracle_graph, edges_triangles, prior))
    assert gap == pytest.approx(expected)


def test_grid_axes_validation(oracle_graph, edges_triangles):
    prior = GaussianPrior.default(2, 30.0)
    with pytest.raises(ValueError):
        exact_posterior_grid(oracle_graph, edges_triangles, prior, grid_axes([0.0], 1.0, 5))
    with pytest.raises(ValueError):
        exact_posterior_grid(oracle_graph, edges_triangles, prior, (np.zeros(3), np.arange(3.0)))
