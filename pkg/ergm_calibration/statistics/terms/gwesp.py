from __future__ import annotations

import numpy as np

from ergm_calibration.core.kernels import GWESP
from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import StatisticTerm, TermKind
from ergm_calibration.statistics.registry import TermRegistry


def edgewise_shared_partners(graph: Graph) -> np.ndarray:
    """Shared-partner count of every edge, canonical edge order."""
    a = graph.adjacency.astype(np.float64)
    partners = np.rint(a @ a).astype(np.int64)
    rows, cols = np.nonzero(np.triu(graph.adjacency, k=1))
    return partners[rows, cols]


class GwespTerm(BaseTermStatistic):
    """
    Geometrically weighted edgewise shared partners with fixed decay φ:

        v(y, φ) = e^φ Σ_{i=1}^{n-2} {1 − (1 − e^{−φ})^i} EP_i(y)
    """

    code = GWESP

    def value(self, term: StatisticTerm, graph: Graph) -> float:
        decay = term.decay
        shared = edgewise_shared_partners(graph)
        shared = shared[shared > 0]
        if shared.size == 0:
            return 0.0
        ratio = 1.0 - np.exp(-decay)
        return float(np.exp(decay) * (1.0 - ratio ** shared).sum())

    def kernel_param(self, term: StatisticTerm) -> float:
        return float(term.decay)


TermRegistry.register(TermKind.GWESP, GwespTerm)
