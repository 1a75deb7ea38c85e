from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, slots=True, kw_only=True)
class ChangeStatMatrix:
    """
    Predictor matrix of the pseudolikelihood logistic regression.

    Row k holds δ_s(y) for the k-th dyad of ``Graph.dyad_list()``;
    ``response[k]`` is the observed y for that dyad.
    """

    rows: np.ndarray
    response: np.ndarray
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.float64)
        response = np.asarray(self.response, dtype=np.float64)
        if rows.ndim != 2 or response.shape != (rows.shape[0],):
            raise ValueError(
                f"Change statistics {rows.shape} and response {response.shape} do not align"
            )
        rows.flags.writeable = False
        response.flags.writeable = False
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "response", response)

    @property
    def n_dyads(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]

    @property
    def has_both_outcomes(self) -> bool:
        total = float(self.response.sum())
        return 0 < total < self.n_dyads
