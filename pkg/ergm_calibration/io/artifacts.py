"""
Run artifacts: chains, the calibration map, summaries, timings and
plot data. Floats are written with FLOAT_FORMAT so that reruns with the
same seed produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Mapping

import numpy as np
import pandas as pd

from ergm_calibration.core.constant import FLOAT_FORMAT
from ergm_calibration.domain.models.calibration_map import CalibrationMap
from ergm_calibration.domain.models.chain import McmcChain
from ergm_calibration.domain.models.results import (DegeneracyReport,
                                                    StageTimings,
                                                    SummaryTable)
from ergm_calibration.exceptions.graph import DataFormatError
from ergm_calibration.inference.diagnostics import TvGrid


# =========================
# Chains
# =========================

def chain_frame(chain: McmcChain) -> pd.DataFrame:
    frame = pd.DataFrame(chain.draws, columns=[f"theta_{k + 1}" for k in range(chain.d)])
    frame.insert(0, "iter", np.arange(chain.burn_in + 1, chain.burn_in + chain.length + 1))
    frame["log_target"] = chain.log_target
    return frame


def write_chain_csv(chain: McmcChain, path: str | Path) -> Path:
    """``iter,theta_1,...,theta_d,log_target``; one row per retained draw."""
    path = Path(path)
    chain_frame(chain).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def read_chain_csv(path: str | Path, *, labels: Iterable[str] = ()) -> McmcChain:
    """
    Inverse of ``write_chain_csv``. Acceptance is not stored, so it is
    recovered as the number of rows that differ from their predecessor.
    """
    path = Path(path)
    try:
        frame = pd.read_csv(path)
    except (ValueError, pd.errors.ParserError) as exc:
        raise DataFormatError(f"{path}: {exc}") from exc
    theta_columns = [c for c in frame.columns if c.startswith("theta_")]
    if "iter" not in frame.columns or "log_target" not in frame.columns or not theta_columns:
        raise DataFormatError(f"{path}: expected header iter,theta_1..theta_d,log_target")
    if frame.empty:
        raise DataFormatError(f"{path}: chain has no rows")

    draws = frame[theta_columns].to_numpy(dtype=np.float64)
    moved = int(np.any(draws[1:] != draws[:-1], axis=1).sum())
    return McmcChain(
        draws=draws,
        log_target=frame["log_target"].to_numpy(dtype=np.float64),
        accepted=moved,
        burn_in=int(frame["iter"].iloc[0]) - 1,
        seed=None,
        wall_time=0.0,
        labels=tuple(labels),
    )


# =========================
# Calibration map
# =========================

def write_calibration_map(cal_map: CalibrationMap, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(cal_map.to_text())
    return path


def read_calibration_map(path: str | Path) -> CalibrationMap:
    path = Path(path)
    try:
        return CalibrationMap.from_text(path.read_text())
    except (ValueError, IndexError, TypeError) as exc:
        raise DataFormatError(f"{path}: malformed calibration map ({exc})") from exc


# =========================
# Text reports
# =========================

def write_summary(
    tables: Mapping[str, SummaryTable],
    path: str | Path,
    *,
    notes: Iterable[str] = (),
) -> Path:
    """One block per chain, titled by the mapping key."""
    path = Path(path)
    blocks = [table.to_text(title) for title, table in tables.items()]
    notes = list(notes)
    if notes:
        blocks.append("\n".join(notes) + "\n")
    path.write_text("\n".join(blocks))
    return path


def write_timings(
    timings: StageTimings,
    path: str | Path,
    *,
    min_ess: float | None = None,
    efficiency: float | None = None,
    relative: float | None = None,
) -> Path:
    path = Path(path)
    path.write_text(timings.to_text(min_ess=min_ess, efficiency=efficiency, relative=relative))
    return path


def write_text(lines: Iterable[str], path: str | Path) -> Path:
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


# =========================
# Plot data
# =========================

def write_density_csv(
    curves: Mapping[str, tuple[np.ndarray, np.ndarray]],
    path: str | Path,
) -> Path:
    """Long format ``chain,value,density`` for one parameter."""
    path = Path(path)
    frame = pd.concat(
        [pd.DataFrame({"chain": name, "value": grid, "density": density})
         for name, (grid, density) in curves.items()],
        ignore_index=True,
    )
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_edge_histogram(report: DegeneracyReport, path: str | Path) -> Path:
    """``bin_left,bin_right,count,observed``; ``observed`` marks the bin holding y."""
    path = Path(path)
    left, right = report.bin_edges[:-1], report.bin_edges[1:]
    observed = (left <= report.observed_edges) & (report.observed_edges < right)
    pd.DataFrame({
        "bin_left": left,
        "bin_right": right,
        "count": report.histogram,
        "observed": observed.astype(int),
    }).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path


def write_tv_grid(grid: TvGrid, path: str | Path, *, names: tuple[str, str] = ("first", "second")) -> Path:
    """One row per histogram cell with both normalised frequencies."""
    path = Path(path)
    x_left = np.repeat(grid.x_edges[:-1], grid.y_edges.size - 1)
    y_left = np.tile(grid.y_edges[:-1], grid.x_edges.size - 1)
    pd.DataFrame({
        "x_left": x_left,
        "y_left": y_left,
        names[0]: grid.first.ravel(),
        names[1]: grid.second.ravel(),
    }).to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    return path
