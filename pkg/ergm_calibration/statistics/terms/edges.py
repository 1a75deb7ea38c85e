from __future__ import annotations

from ergm_calibration.core.kernels import EDGES
from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import StatisticTerm, TermKind
from ergm_calibration.statistics.registry import TermRegistry


class EdgesTerm(BaseTermStatistic):
    """s(y) = Σ_{i<j} y_ij."""

    code = EDGES

    def value(self, term: StatisticTerm, graph: Graph) -> float:
        return float(graph.edge_count)


TermRegistry.register(TermKind.EDGES, EdgesTerm)
