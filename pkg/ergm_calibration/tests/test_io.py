import numpy as np
import pandas as pd
import pytest

from ergm_calibration.domain.models.chain import McmcChain
from ergm_calibration.domain.models.results import StageTimings
from ergm_calibration.exceptions import DataFormatError
from ergm_calibration.inference.calibration import build_map
from ergm_calibration.inference.diagnostics import (degeneracy_check,
                                                    tv_grid)
from ergm_calibration.io.artifacts import (read_calibration_map,
                                           read_chain_csv,
                                           write_calibration_map,
                                           write_chain_csv,
                                           write_density_csv,
                                           write_edge_histogram,
                                           write_timings, write_tv_grid)
from ergm_calibration.io.edge_list import (load_graph, read_attributes,
                                           read_edge_list, write_edge_list)
from ergm_calibration.tests.conftest import random_graph


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return path


# =========================
# Edge lists / attributes
# =========================

def test_read_edge_list(tmp_path):
    path = write(tmp_path, "g.txt", "# toy\n0 1\n1 2\n\n2 4\n")
    n, edges = read_edge_list(path)
    assert n == 5
    assert edges.tolist() == [[0, 1], [1, 2], [2, 4]]


def test_read_one_indexed_edge_list_with_node_count(tmp_path):
    path = write(tmp_path, "g.txt", "1 2\n2 3\n")
    n, edges = read_edge_list(path, one_indexed=True, n=6)
    assert n == 6
    assert edges.tolist() == [[0, 1], [1, 2]]


def test_read_empty_edge_list(tmp_path):
    n, edges = read_edge_list(write(tmp_path, "g.txt", "# nothing\n"), n=4)
    assert n == 4
    assert edges.shape == (0, 2)


@pytest.mark.parametrize(
    ("text", "kwargs"),
    [
        ("0 1\n1 x\n", {}),
        ("0 1 2\n1 2 3\n", {}),
        ("0 1\n1 2\n", {"one_indexed": True}),
        ("0 7\n", {"n": 5}),
    ],
)
def test_malformed_edge_lists(tmp_path, text, kwargs):
    with pytest.raises(DataFormatError):
        read_edge_list(write(tmp_path, "bad.txt", text), **kwargs)


def test_load_graph_rejects_self_loops(tmp_path):
    with pytest.raises(DataFormatError):
        load_graph(write(tmp_path, "loop.txt", "0 1\n2 2\n"))


def test_edge_list_file_reproduces_graph(tmp_path):
    graph = random_graph(15, 0.3, seed=8)
    path = write_edge_list(graph, tmp_path / "g.txt", one_indexed=True)
    loaded = load_graph(path, one_indexed=True, n=15)
    assert sorted(loaded.edge_list()) == sorted(graph.edge_list())
    assert path.read_text().startswith("# n=15")


def test_read_attributes(tmp_path):
    path = write(tmp_path, "a.csv", "node,grade,sex\n2,9,F\n0,7,M\n1,8,F\n")
    attributes = read_attributes(path)
    assert set(attributes) == {"grade", "sex"}
    assert attributes["grade"].values() == ["7", "8", "9"]
    assert attributes["sex"].values() == ["M", "F", "F"]


def test_load_graph_with_attributes(tmp_path):
    edges = write(tmp_path, "g.txt", "1 2\n2 3\n")
    attrs = write(tmp_path, "a.csv", "node,grade\n1,7\n2,8\n3,8\n4,9\n")
    graph = load_graph(edges, attrs, one_indexed=True)
    assert graph.n == 4
    assert graph.edge_count == 2
    assert graph.attributes["grade"].values() == ["7", "8", "8", "9"]


@pytest.mark.parametrize(
    "text",
    [
        "id,grade\n0,7\n1,8\n",
        "node\n0\n1\n",
        "node,grade\n0,7\n0,8\n",
        "node,grade\n0,7\n1,\n",
        "node,grade\na,7\nb,8\n",
    ],
)
def test_malformed_attribute_files(tmp_path, text):
    with pytest.raises(DataFormatError):
        read_attributes(write(tmp_path, "a.csv", text))


# =========================
# Artifacts
# =========================

def test_chain_csv_round_trip(tmp_path, rng):
    draws = rng.normal(size=(6, 2))
    draws[3] = draws[2]
    chain = McmcChain(draws=draws, log_target=rng.normal(size=6), accepted=4,
                      burn_in=100, seed=1, wall_time=1.0, labels=("edges", "triangles"))
    path = write_chain_csv(chain, tmp_path / "chain.csv")
    frame = pd.read_csv(path)
    assert list(frame.columns) == ["iter", "theta_1", "theta_2", "log_target"]
    assert frame["iter"].tolist() == list(range(101, 107))

    restored = read_chain_csv(path, labels=chain.labels)
    assert np.array_equal(restored.draws, chain.draws)
    assert np.array_equal(restored.log_target, chain.log_target)
    assert restored.burn_in == 100
    assert restored.accepted == 4
    assert restored.labels == ("edges", "triangles")


@pytest.mark.parametrize("text", ["a,b\n1,2\n", "iter,theta_1,log_target\n"])
def test_malformed_chain_files(tmp_path, text):
    with pytest.raises(DataFormatError):
        read_chain_csv(write(tmp_path, "chain.csv", text))


def test_calibration_map_file(tmp_path, rng):
    a = rng.normal(size=(2, 2))
    cal_map = build_map(rng.normal(size=2), -(a @ a.T + np.eye(2)), rng.normal(size=2), -2 * np.eye(2))
    path = write_calibration_map(cal_map, tmp_path / "map.txt")
    restored = read_calibration_map(path)
    assert np.array_equal(restored.w, cal_map.w)
    assert np.array_equal(restored.lam, cal_map.lam)


def test_malformed_calibration_map(tmp_path):
    with pytest.raises(DataFormatError):
        read_calibration_map(write(tmp_path, "map.txt", "[w] 2 2\n1 0\n"))


def test_plot_data_files(tmp_path, rng, edges_triangles):
    curves = {"raw": (np.linspace(0, 1, 5), np.ones(5)), "calibrated": (np.linspace(0, 1, 5), np.ones(5))}
    density = pd.read_csv(write_density_csv(curves, tmp_path / "density.csv"))
    assert list(density.columns) == ["chain", "value", "density"]
    assert len(density) == 10

    grid = tv_grid(rng.normal(size=(200, 2)), rng.normal(size=(200, 2)), bins=10)
    cells = pd.read_csv(write_tv_grid(grid, tmp_path / "tv.csv", names=("exchange", "calibrated")))
    assert len(cells) == 100
    assert cells["exchange"].sum() == pytest.approx(1.0)

    observed = random_graph(8, 0.3, seed=2)
    chain = McmcChain(draws=np.tile([-1.0, 0.0], (10, 1)), log_target=np.zeros(10), accepted=0,
                      burn_in=0, seed=None, wall_time=1.0)
    report = degeneracy_check(chain, edges_triangles, observed, subsample=5, burn=100, thin=5, seed=3)
    histogram = pd.read_csv(write_edge_histogram(report, tmp_path / "hist.csv"))
    assert histogram["count"].sum() == 5
    assert histogram["observed"].sum() == 1


def test_timings_file(tmp_path):
    timings = StageTimings()
    timings.record("mple", 1.5)
    timings.record("chain", 10.0)
    text = write_timings(timings, tmp_path / "timings.txt", min_ess=1150.0).read_text()
    assert "mple" in text and "chain" in text
    assert "min ESS: 1150.0" in text
    assert "relative efficiency" not in text

    text = write_timings(timings, tmp_path / "timings.txt", min_ess=1150.0,
                         efficiency=100.0, relative=1.5).read_text()
    assert "efficiency ratio: 100.00" in text
    assert "relative efficiency: 1.50" in text
