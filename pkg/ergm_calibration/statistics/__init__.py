# Import terms so registration happens
from ergm_calibration.statistics.terms.edges import EdgesTerm  # noqa
from ergm_calibration.statistics.terms.gwesp import GwespTerm  # noqa
from ergm_calibration.statistics.terms.kstar import KStarTerm  # noqa
from ergm_calibration.statistics.terms.nodal_factor import \
    NodalFactorTerm  # noqa
from ergm_calibration.statistics.terms.triangles import TrianglesTerm  # noqa

from .evaluator import (TermTable, change_stat_matrix, change_statistic,
                        compile_terms, sufficient_statistics)

__all__ = [
    "TermTable",
    "compile_terms",
    "sufficient_statistics",
    "change_statistic",
    "change_stat_matrix",
]
