"""
Chain and distribution diagnostics: effective sample size, efficiency
ratios, binned total-variation distance, posterior summaries, kernel
density plot data and the posterior-predictive degeneracy check.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import gaussian_kde

from ergm_calibration.core.constant import (DEGENERACY_DENSITY,
                                            DEGENERACY_DRAWS_PER_THETA,
                                            DEGENERACY_FRACTION,
                                            DEGENERACY_SUBSAMPLE,
                                            EDGE_HISTOGRAM_BINS,
                                            ESS_MIN_LENGTH, KDE_POINTS,
                                            TNT_BURN_IN, TNT_THIN, TV_BINS,
                                            TV_PADDING)
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.chain import McmcChain
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.results import (DegeneracyReport,
                                                    ParameterSummary,
                                                    SummaryTable)
from ergm_calibration.exceptions.numerical import (UndefinedEssError,
                                                   UnsupportedDimensionError)
from ergm_calibration.inference.tnt import SeedLike, simulate_stats


# =========================
# Effective sample size
# =========================

def autocorrelation(series: np.ndarray) -> np.ndarray:
    """Normalised autocorrelation at lags 0..T-1, computed by FFT."""
    x = np.asarray(series, dtype=np.float64)
    x = x - x.mean()
    t = x.size
    size = 1 << (2 * t - 1).bit_length()
    spectrum = np.fft.rfft(x, n=size)
    acov = np.fft.irfft(spectrum * np.conj(spectrum), n=size)[:t]
    return acov / acov[0]


def ess(series: np.ndarray) -> float:
    """
    T / (1 + 2 Σ ρ_k), truncating the sum with Geyer's initial positive
    sequence: pairs ρ_{2m} + ρ_{2m+1} are added while they stay positive.
    The result is clipped to (0, T].
    """
    x = np.asarray(series, dtype=np.float64).ravel()
    t = x.size
    if t < ESS_MIN_LENGTH:
        raise UndefinedEssError(f"ESS needs at least {ESS_MIN_LENGTH} values, got {t}")
    if not np.all(np.isfinite(x)) or np.ptp(x) == 0.0:
        raise UndefinedEssError()

    rho = autocorrelation(x)
    pairs = rho[: t - t % 2].reshape(-1, 2).sum(axis=1)
    positive = pairs > 0
    cut = int(np.argmin(positive)) if not positive.all() else pairs.size
    tau = -1.0 + 2.0 * pairs[:cut].sum()
    if tau <= 0:
        return float(t)
    return float(min(t / tau, t))


def efficiency_ratio(min_ess: float, cpu_seconds: float) -> float:
    """ER = min ESS / CPU seconds."""
    if cpu_seconds <= 0:
        raise ValueError(f"CPU time must be positive, got {cpu_seconds}")
    return min_ess / cpu_seconds


def relative_efficiency(er: float, er_baseline: float) -> float:
    if er_baseline <= 0:
        raise ValueError(f"Baseline efficiency ratio must be positive, got {er_baseline}")
    return er / er_baseline


def summarize_chain(chain: McmcChain, *, wall_time: float | None = None) -> SummaryTable:
    parameters = tuple(
        ParameterSummary(
            label=label,
            mean=float(chain.draws[:, k].mean()),
            sd=float(chain.draws[:, k].std(ddof=1)),
            ess=ess(chain.draws[:, k]),
        )
        for k, label in enumerate(chain.labels)
    )
    return SummaryTable(
        parameters=parameters,
        min_ess=min(p.ess for p in parameters),
        acceptance_rate=chain.acceptance_rate,
        wall_time=chain.wall_time if wall_time is None else wall_time,
        length=chain.length,
    )


# =========================
# Total variation
# =========================

@dataclass(frozen=True, slots=True)
class TvGrid:
    """Shared 2-d histogram of two samples, frequencies normalised to 1."""

    x_edges: np.ndarray
    y_edges: np.ndarray
    first: np.ndarray
    second: np.ndarray

    @property
    def distance(self) -> float:
        return float(0.5 * np.abs(self.first - self.second).sum())


def _as_2d(sample: np.ndarray, name: str) -> np.ndarray:
    sample = np.asarray(sample, dtype=np.float64)
    if sample.ndim != 2 or sample.shape[1] != 2:
        raise UnsupportedDimensionError(
            f"TV distance is defined for 2-d samples only; {name} has shape {sample.shape}"
        )
    if sample.shape[0] == 0:
        raise ValueError(f"Sample {name} is empty")
    return sample


def tv_grid(
    a: np.ndarray,
    b: np.ndarray,
    *,
    bins: int = TV_BINS,
    padding: float = TV_PADDING,
) -> TvGrid:
    """Histogram both samples on one grid over their padded union bounding box."""
    a = _as_2d(a, "a")
    b = _as_2d(b, "b")
    both = np.vstack([a, b])
    lo = both.min(axis=0)
    hi = both.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    lo = lo - padding * span
    hi = hi + padding * span
    edges = [np.linspace(lo[k], hi[k], bins + 1) for k in range(2)]

    f, _, _ = np.histogram2d(a[:, 0], a[:, 1], bins=edges)
    g, _, _ = np.histogram2d(b[:, 0], b[:, 1], bins=edges)
    return TvGrid(x_edges=edges[0], y_edges=edges[1], first=f / f.sum(), second=g / g.sum())


def tv_distance_2d(
    a: np.ndarray,
    b: np.ndarray,
    *,
    bins: int = TV_BINS,
    padding: float = TV_PADDING,
) -> float:
    """½ Σ |f̂ − ĝ| over a shared bins×bins grid; symmetric, in [0, 1]."""
    return tv_grid(a, b, bins=bins, padding=padding).distance


# =========================
# Plot data
# =========================

def kde_density_grid(series: np.ndarray, *, points: int = KDE_POINTS) -> tuple[np.ndarray, np.ndarray]:
    """Gaussian kernel density of one marginal on an evenly spaced grid."""
    x = np.asarray(series, dtype=np.float64).ravel()
    if np.ptp(x) == 0.0:
        raise UndefinedEssError("Cannot estimate a density from a constant series")
    kde = gaussian_kde(x)
    spread = 3.0 * float(np.sqrt(kde.covariance[0, 0]))
    grid = np.linspace(x.min() - spread, x.max() + spread, points)
    return grid, kde(grid)


# =========================
# Degeneracy check
# =========================

def degeneracy_check(
    chain: McmcChain,
    model: ModelSpec,
    initial: Graph | int,
    *,
    draws_per_theta: int = DEGENERACY_DRAWS_PER_THETA,
    subsample: int = DEGENERACY_SUBSAMPLE,
    burn: int = TNT_BURN_IN,
    thin: int = TNT_THIN,
    density_threshold: float = DEGENERACY_DENSITY,
    fraction_threshold: float = DEGENERACY_FRACTION,
    bins: int = EDGE_HISTOGRAM_BINS,
    seed: SeedLike = None,
    workers: int | None = None,
) -> DegeneracyReport:
    """
    Posterior-predictive edge counts.

    ``subsample`` θ draws are taken without replacement from the chain and
    ``draws_per_theta`` networks simulated at each, starting from
    ``initial``. The model is flagged degenerate when more than
    ``fraction_threshold`` of the networks exceed ``density_threshold``.
    """
    if chain.length == 0:
        raise ValueError("Degeneracy check needs a non-empty chain")
    rng = np.random.default_rng(seed)
    picks = np.sort(rng.choice(chain.length, size=min(subsample, chain.length), replace=False))
    streams = rng.spawn(picks.size)
    n_nodes = initial.n if isinstance(initial, Graph) else int(initial)
    n_dyads = n_nodes * (n_nodes - 1) // 2

    def run(k: int) -> np.ndarray:
        sample = simulate_stats(
            chain.draws[picks[k]], model, initial,
            burn=burn, draws=draws_per_theta, thin=thin, seed=streams[k],
        )
        return sample.densities

    logger.debug(f"Degeneracy check: {picks.size} θ draws × {draws_per_theta} networks")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        densities = np.concatenate(list(pool.map(run, range(picks.size))))

    edge_counts = np.rint(densities * n_dyads).astype(np.int64)
    observed_edges = initial.edge_count if isinstance(initial, Graph) else 0
    top = max(int(edge_counts.max()), observed_edges) + 1
    histogram, bin_edges = np.histogram(edge_counts, bins=min(bins, top), range=(0, top))
    share = float(np.mean(densities > density_threshold))
    degenerate = share > fraction_threshold
    if degenerate:
        logger.warning(f"{share:.0%} of simulated networks exceed {density_threshold:.0%} density")
    else:
        logger.info(f"Degeneracy check clear: {share:.1%} of networks above {density_threshold:.0%} density")
    return DegeneracyReport(
        edge_counts=edge_counts,
        histogram=histogram,
        bin_edges=bin_edges,
        observed_edges=observed_edges,
        n_dyads=n_dyads,
        high_density_share=share,
        degenerate=degenerate,
    )
