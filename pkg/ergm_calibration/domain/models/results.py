from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass(frozen=True, slots=True, kw_only=True)
class MpleResult:
    """
    Mode of log_pl (+ log_prior when a prior is used) with the Hessian
    of the same objective at the mode.
    """

    theta: np.ndarray
    hessian: np.ndarray
    converged: bool
    iterations: int
    grad_norm: float
    with_prior: bool

    def to_dict(self) -> dict[str, Any]:
        return {
            "theta": self.theta.tolist(),
            "hessian": self.hessian.tolist(),
            "converged": self.converged,
            "iterations": self.iterations,
            "grad_norm": self.grad_norm,
            "with_prior": self.with_prior,
        }


@dataclass(frozen=True, slots=True, kw_only=True)
class RobbinsMonroResult:
    theta: np.ndarray
    iterations: int
    trajectory: np.ndarray
    converged: bool
    saturated_iterations: int = 0


@dataclass(frozen=True, slots=True, kw_only=True)
class ParameterSummary:
    label: str
    mean: float
    sd: float
    ess: float


@dataclass(frozen=True, slots=True, kw_only=True)
class SummaryTable:
    """Posterior mean/sd per parameter plus chain efficiency figures."""

    parameters: tuple[ParameterSummary, ...]
    min_ess: float
    acceptance_rate: float
    wall_time: float
    length: int

    @property
    def means(self) -> np.ndarray:
        return np.array([p.mean for p in self.parameters])

    @property
    def sds(self) -> np.ndarray:
        return np.array([p.sd for p in self.parameters])

    def to_text(self, title: str = "Posterior summary") -> str:
        width = max([len(p.label) for p in self.parameters] + [9])
        lines = [
            title,
            f"{'parameter':<{width}}  {'mean':>10}  {'sd':>8}  {'ess':>9}",
        ]
        for p in self.parameters:
            lines.append(f"{p.label:<{width}}  {p.mean:>10.4f}  {p.sd:>8.4f}  {p.ess:>9.1f}")
        lines.append(f"iterations: {self.length}")
        lines.append(f"min ESS: {self.min_ess:.1f}")
        lines.append(f"acceptance rate: {self.acceptance_rate:.3f}")
        lines.append(f"wall time (s): {self.wall_time:.2f}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict[str, Any]:
        return {
            "parameters": [
                {"label": p.label, "mean": p.mean, "sd": p.sd, "ess": p.ess}
                for p in self.parameters
            ],
            "min_ess": self.min_ess,
            "acceptance_rate": self.acceptance_rate,
            "wall_time": self.wall_time,
            "length": self.length,
        }


@dataclass(frozen=True, slots=True, kw_only=True)
class DegeneracyReport:
    """Posterior-predictive edge counts and the degeneracy verdict."""

    edge_counts: np.ndarray
    histogram: np.ndarray
    bin_edges: np.ndarray
    observed_edges: int
    n_dyads: int
    high_density_share: float
    degenerate: bool


@dataclass(frozen=True, slots=True, kw_only=True)
class EnumerationResult:
    """Exact moments of s(y) under p(·|θ) for a tiny graph."""

    log_z: float
    mean_stats: np.ndarray
    cov_stats: np.ndarray
    n: int


@dataclass(frozen=True, slots=True, kw_only=True)
class PosteriorGrid:
    """Exact posterior on a rectangular grid, normalised by quadrature."""

    axes: tuple[np.ndarray, ...]
    log_density: np.ndarray
    density: np.ndarray
    argmax: np.ndarray
    cell_volume: float

    def marginal(self, k: int) -> np.ndarray:
        other = tuple(a for a in range(self.density.ndim) if a != k)
        spacing = np.prod([self.axes[a][1] - self.axes[a][0] for a in other]) if other else 1.0
        return self.density.sum(axis=other) * spacing


@dataclass(slots=True)
class StageTimings:
    """CPU seconds per pipeline stage, in execution order."""

    stages: dict[str, float] = field(default_factory=dict)

    def record(self, stage: str, seconds: float) -> None:
        self.stages[stage] = self.stages.get(stage, 0.0) + seconds

    @property
    def total(self) -> float:
        return float(sum(self.stages.values()))

    def to_text(
        self,
        *,
        min_ess: float | None = None,
        efficiency: float | None = None,
        relative: float | None = None,
    ) -> str:
        """Stage table, followed by whichever efficiency figures are given."""
        lines = [f"{'stage':<32}  {'cpu_s':>10}"]
        for stage, seconds in self.stages.items():
            lines.append(f"{stage:<32}  {seconds:>10.2f}")
        lines.append(f"{'total':<32}  {self.total:>10.2f}")
        if min_ess is not None:
            lines.append(f"min ESS: {min_ess:.1f}")
        if efficiency is not None:
            lines.append(f"efficiency ratio: {efficiency:.2f}")
        if relative is not None:
            lines.append(f"relative efficiency: {relative:.2f}")
        return "\n".join(lines) + "\n"
