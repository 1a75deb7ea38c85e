"""
Runs against the toy, E-road and Faux Mesa networks. The toy network ships with the
package; the others are skipped unless present under ``ergm_calibration/data``.
"""

from pathlib import Path

import numpy as np
import pytest

from ergm_calibration.core.config import load_config
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.inference.pseudolikelihood import mple
from ergm_calibration.io.artifacts import read_chain_csv
from ergm_calibration.io.edge_list import load_graph
from ergm_calibration.services.pipeline import run_pipeline
from ergm_calibration.statistics import change_stat_matrix
from ergm_calibration.tests.conftest import data_file

CONFIG_DIR = Path(__file__).resolve().parents[2] / "configs"

pytestmark = pytest.mark.dataset


def run(config: str, tmp_path: Path, **overrides):
    cfg = load_config(CONFIG_DIR / config, out=tmp_path, **overrides)
    return run_pipeline(cfg)


def test_toy_mple():
    graph = load_graph(data_file("toy_edges.txt"), one_indexed=True, n=30)
    assert (graph.n, graph.edge_count) == (30, 65)
    csm = change_stat_matrix(graph, ModelSpec.parse(["edges", "triangles"]))
    plain = mple(csm)
    assert plain.theta == pytest.approx([-3.08, 0.95], abs=0.01)

    shrunk = mple(csm, GaussianPrior.default(2))
    assert np.linalg.norm(shrunk.theta) <= np.linalg.norm(plain.theta)


@pytest.mark.slow
def test_toy_model_is_degenerate(tmp_path):
    data_file("toy_edges.txt")
    report = run("toy.toml", tmp_path)
    assert "flag RAISED" in report.artifacts["summary"].read_text()


@pytest.mark.slow
def test_eroad_pseudo_posterior(tmp_path):
    data_file("eroad_edges.txt")
    report = run("eroad.toml", tmp_path, mode="pseudo")
    draws = read_chain_csv(report.artifacts["chain_raw"]).draws
    assert draws.mean(axis=0) == pytest.approx([-4.496, -0.388], abs=0.03)
    assert draws.std(axis=0, ddof=1) == pytest.approx([0.089, 0.021], rel=0.2)


@pytest.mark.slow
def test_eroad_calibrated_posterior(tmp_path):
    data_file("eroad_edges.txt")
    report = run("eroad.toml", tmp_path)
    draws = read_chain_csv(report.artifacts["chain_calibrated"]).draws
    assert draws.mean(axis=0) == pytest.approx([-4.840, -0.311], abs=0.1)
    assert draws.std(axis=0, ddof=1) == pytest.approx([0.127, 0.029], rel=0.25)

    tv = next(n for n in report.artifacts["summary"].read_text().splitlines() if n.startswith("TV("))
    assert float(tv.rsplit("=", 1)[1]) <= 0.1


@pytest.mark.slow
def test_faux_mesa_pseudo_posterior(tmp_path):
    data_file("faux_mesa_edges.txt")
    data_file("faux_mesa_attributes.csv")
    report = run("faux_mesa.toml", tmp_path, mode="pseudo")
    means = read_chain_csv(report.artifacts["chain_raw"]).draws.mean(axis=0)
    expected = np.array([-6.250, 1.805, 1.821, 2.090, 2.353, 2.487, 2.827, 1.136])
    assert means == pytest.approx(expected, abs=0.1)
