from __future__ import annotations

import numpy as np

from ergm_calibration.core.kernels import NODEFACTOR
from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import StatisticTerm, TermKind
from ergm_calibration.statistics.registry import TermRegistry


class NodalFactorTerm(BaseTermStatistic):
    """
    Main effect of one attribute level:

        s(y, x) = Σ_{i<j} y_ij {1(x_i = ℓ) + 1(x_j = ℓ)} = Σ_i 1(x_i = ℓ) deg_i

    No baseline level is dropped automatically; list the levels you want.
    """

    code = NODEFACTOR

    def value(self, term: StatisticTerm, graph: Graph) -> float:
        weights = self.indicator(term, graph)
        return float(weights @ graph.degree)

    def indicator(self, term: StatisticTerm, graph: Graph) -> np.ndarray:
        return graph.attribute(term.attribute).indicator(term.level)


TermRegistry.register(TermKind.NODEFACTOR, NodalFactorTerm)
