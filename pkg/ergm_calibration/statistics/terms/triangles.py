from __future__ import annotations

import numpy as np

from ergm_calibration.core.kernels import TRIANGLES
from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import StatisticTerm, TermKind
from ergm_calibration.statistics.registry import TermRegistry


class TrianglesTerm(BaseTermStatistic):
    """Closed triples, trace(A³)/6."""

    code = TRIANGLES

    def value(self, term: StatisticTerm, graph: Graph) -> float:
        a = graph.adjacency.astype(np.float64)
        return float(np.rint(((a @ a) * a).sum() / 6.0))


TermRegistry.register(TermKind.TRIANGLES, TrianglesTerm)
