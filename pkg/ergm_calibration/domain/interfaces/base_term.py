from __future__ import annotations

from abc import ABC, abstractmethod

import numpy as np

from ..models.graph import Graph
from ..models.model_spec import StatisticTerm


class BaseTermStatistic(ABC):
    """
    Abstract base class for all statistic term implementations.

    Contract:
    - ``value`` computes s_t(y) from scratch on the whole graph
    - ``code``, ``kernel_param`` and ``indicator`` compile the term into the
      row consumed by the compiled change-statistic kernels
    - Must raise ModelDataMismatchError when the graph lacks the data
      the term needs
    - Must be stateless; one instance serves every term of its kind
    """

    # Kernel code from ergm_calibration.core.kernels
    code: int

    @abstractmethod
    def value(self, term: StatisticTerm, graph: Graph) -> float:
        """
        Sufficient statistic s_t(y) of ``graph``.
        """
        raise NotImplementedError

    def kernel_param(self, term: StatisticTerm) -> float:
        """
        Scalar parameter handed to the kernel (k for k-stars, decay for GWESP).
        """
        return 0.0

    def indicator(self, term: StatisticTerm, graph: Graph) -> np.ndarray:
        """
        Per-node weights handed to the kernel (nodal terms only).
        """
        return np.zeros(graph.n)

    def __repr__(self) -> str:
        return f"{type(self).__name__}(code={self.code})"
