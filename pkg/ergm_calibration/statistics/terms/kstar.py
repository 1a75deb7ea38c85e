from __future__ import annotations

from scipy.special import comb

from ergm_calibration.core.kernels import KSTAR
from ergm_calibration.domain.interfaces.base_term import BaseTermStatistic
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import StatisticTerm, TermKind
from ergm_calibration.statistics.registry import TermRegistry


class KStarTerm(BaseTermStatistic):
    """
    Unordered k-stars, Σ_v C(deg_v, k).

    For k = 2 this is Σ_{i<j<k} y_ik y_jk summed over distinct centres.
    """

    code = KSTAR

    def value(self, term: StatisticTerm, graph: Graph) -> float:
        return float(comb(graph.degree, term.k).sum())

    def kernel_param(self, term: StatisticTerm) -> float:
        return float(term.k)


TermRegistry.register(TermKind.KSTAR, KStarTerm)
