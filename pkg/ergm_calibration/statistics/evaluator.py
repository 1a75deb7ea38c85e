from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ergm_calibration.core import kernels
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.change_stats import ChangeStatMatrix
from ergm_calibration.domain.models.graph import Dyad, Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.exceptions.graph import GraphStructureError
from ergm_calibration.statistics.registry import TermRegistry


@dataclass(frozen=True, slots=True, kw_only=True)
class TermTable:
    """A model compiled against one graph's node attributes."""

    codes: np.ndarray
    params: np.ndarray
    indicators: np.ndarray
    labels: tuple[str, ...]

    @property
    def d(self) -> int:
        return self.codes.size


def compile_terms(model: ModelSpec, graph: Graph) -> TermTable:
    """
    Resolve every term to its kernel code, scalar parameter and node weights.

    Raises:
        ModelDataMismatchError: a nodal term names a missing attribute/level
    """
    codes = np.empty(model.d, dtype=np.int64)
    params = np.zeros(model.d)
    indicators = np.zeros((model.d, graph.n))
    for t, term in enumerate(model.terms):
        impl = TermRegistry.get(term.kind)
        codes[t] = impl.code
        params[t] = impl.kernel_param(term)
        indicators[t] = impl.indicator(term, graph)
    return TermTable(codes=codes, params=params, indicators=indicators, labels=model.labels)


def sufficient_statistics(graph: Graph, model: ModelSpec) -> np.ndarray:
    """s(y) for every term, computed from scratch."""
    return np.array(
        [TermRegistry.get(term.kind).value(term, graph) for term in model.terms],
        dtype=np.float64,
    )


def change_statistic(
    graph: Graph,
    model: ModelSpec | TermTable,
    dyad: Dyad,
) -> np.ndarray:
    """
    δ_s(y)_ij = s(y with y_ij = 1) − s(y with y_ij = 0).

    The graph is left untouched.
    """
    if dyad.j >= graph.n:
        raise GraphStructureError(
            f"Dyad ({dyad.i}, {dyad.j}) out of range for a graph with {graph.n} nodes"
        )
    table = model if isinstance(model, TermTable) else compile_terms(model, graph)
    buffers = graph.buffers()
    out = np.empty(table.d)
    kernels.change_vector(buffers.adj, buffers.degree, dyad.i, dyad.j,
                          table.codes, table.params, table.indicators, out)
    return out


def change_stat_matrix(graph: Graph, model: ModelSpec) -> ChangeStatMatrix:
    """
    Change statistics of every dyad in ``Graph.dyad_list()`` order, with the
    observed dyad values as the response.
    """
    table = compile_terms(model, graph)
    logger.debug(f"Building change statistics: n={graph.n}, dyads={graph.n_dyads}, terms={table.labels}")
    buffers = graph.buffers()
    rows, response = kernels.change_matrix(buffers.adj, buffers.degree,
                                           table.codes, table.params, table.indicators)
    return ChangeStatMatrix(rows=rows, response=response, labels=table.labels)
