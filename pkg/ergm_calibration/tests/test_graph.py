import numpy as np
import pytest

from ergm_calibration.domain.models.graph import Dyad, Graph, NodeAttribute
from ergm_calibration.exceptions import (GraphStructureError,
                                         ModelDataMismatchError)


def test_dyad_is_canonical():
    assert Dyad.of(4, 1) == Dyad(1, 4)
    with pytest.raises(GraphStructureError):
        Dyad(3, 2)
    with pytest.raises(GraphStructureError):
        Dyad.of(2, 2)


def test_dyad_list_order():
    graph = Graph(3)
    assert [(d.i, d.j) for d in graph.dyad_list()] == [(0, 1), (0, 2), (1, 2)]
    assert Graph(30).n_dyads == 435


def test_toggle_keeps_buffers_consistent(rng):
    graph = Graph(9)
    dyads = graph.dyad_list()
    for k in rng.integers(0, len(dyads), size=300):
        graph.toggle(dyads[k])

    adj = graph.adjacency
    assert np.array_equal(adj, adj.T)
    assert np.array_equal(graph.degree, adj.sum(axis=1))
    assert graph.edge_count == int(adj.sum()) // 2

    buffers = graph.buffers()
    stored = {tuple(row) for row in buffers.edges[: graph.edge_count].tolist()}
    assert stored == set(graph.edge_list())
    for k, (i, j) in enumerate(buffers.edges[: graph.edge_count].tolist()):
        assert buffers.edge_pos[i, j] == k


def test_toggle_twice_is_identity():
    graph = Graph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    before = graph.adjacency.copy()
    graph.toggle(Dyad(0, 3)).toggle(Dyad(0, 3))
    graph.toggle(Dyad(1, 2)).toggle(Dyad(1, 2))
    assert np.array_equal(graph.adjacency, before)


def test_from_edges_ignores_duplicates():
    graph = Graph.from_edges(4, [(0, 1), (1, 0), (2, 3)])
    assert graph.edge_count == 2
    assert graph.density == pytest.approx(2 / 6)


def test_out_of_range_dyad():
    graph = Graph(3)
    with pytest.raises(GraphStructureError):
        graph.has_edge(Dyad(1, 3))
    with pytest.raises(GraphStructureError):
        Graph.from_edges(3, [(0, 5)])


def test_frozen_graph_rejects_toggles():
    graph = Graph.from_edges(4, [(0, 1)]).freeze()
    with pytest.raises(GraphStructureError):
        graph.toggle(Dyad(0, 2))
    clone = graph.copy()
    clone.toggle(Dyad(0, 2))
    assert graph.edge_count == 1
    assert clone.edge_count == 2


def test_from_adjacency_round_trip():
    matrix = np.array([[0, 1, 1, 0], [1, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    graph = Graph.from_adjacency(matrix)
    assert graph.edge_list() == [(0, 1), (0, 2), (1, 3)]
    with pytest.raises(GraphStructureError):
        Graph.from_adjacency(np.zeros((2, 3)))


def test_node_attributes():
    attribute = NodeAttribute.from_values("grade", [10, 9, 10, 12])
    assert attribute.levels == ("9", "10", "12")
    assert attribute.values() == ["10", "9", "10", "12"]
    assert attribute.indicator(10).tolist() == [1.0, 0.0, 1.0, 0.0]
    with pytest.raises(ModelDataMismatchError):
        attribute.indicator(11)

    graph = Graph(4, attributes={"grade": attribute})
    assert graph.attribute("grade") is attribute
    with pytest.raises(ModelDataMismatchError):
        graph.attribute("race")
    with pytest.raises(GraphStructureError):
        Graph(5, attributes={"grade": attribute})
