from pathlib import Path

import numpy as np
import pytest

from ergm_calibration.domain.models.graph import Graph, NodeAttribute
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.services.oracle_check import fixture_graph

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


def random_graph(n: int, p: float, seed: int, *, attributes=None) -> Graph:
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < p, k=1)
    return Graph.from_adjacency(upper | upper.T, attributes=attributes)


def data_file(name: str) -> Path:
    path = DATA_DIR / name
    if not path.exists():
        pytest.skip(f"dataset file {name} not present")
    return path


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def edges_triangles() -> ModelSpec:
    return ModelSpec.parse(["edges", "triangles"])


@pytest.fixture
def full_model() -> ModelSpec:
    return ModelSpec.parse([
        "edges",
        "kstar{k=2}",
        "kstar{k=3}",
        "triangles",
        "gwesp{decay=0.5}",
        "nodefactor{attr=grade, level=8}",
    ])


@pytest.fixture
def grade() -> NodeAttribute:
    return NodeAttribute.from_values("grade", [7, 8, 8, 9, 7, 8, 9, 9, 7, 8, 8, 7])


@pytest.fixture
def attribute_graph(grade: NodeAttribute) -> Graph:
    return random_graph(12, 0.35, seed=3, attributes={"grade": grade})


@pytest.fixture
def oracle_graph() -> Graph:
    return fixture_graph(4)


@pytest.fixture
def mple_graph() -> Graph:
    """20 nodes, roughly 25% dense; has a finite MPLE under (edges, triangles)."""
    return random_graph(20, 0.25, seed=11)
