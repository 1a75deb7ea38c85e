"""
End-to-end runs, one per configured mode:

- ``pseudo``            pseudo-posterior chain only
- ``calibrate``         pseudo-posterior chain, θ*, H*, affine map, corrected chain
- ``aea``               approximate exchange chain (plus optional aux-length sweep)
- ``degeneracy-check``  posterior-predictive edge counts of a fitted chain
- ``oracle-test``       sampler self-test against exact enumeration
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ergm_calibration.core.config import RunConfig
from ergm_calibration.core.constant import (CALIBRATION_MAP_FILE,
                                            CHAIN_CALIBRATED_FILE,
                                            CHAIN_EXCHANGE_FILE,
                                            CHAIN_RAW_FILE,
                                            EDGE_HISTOGRAM_FILE,
                                            ORACLE_REPORT_FILE, SUMMARY_FILE,
                                            TIMINGS_FILE, TV_GRID_FILE)
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.chain import McmcChain
from ergm_calibration.domain.models.results import SummaryTable
from ergm_calibration.exceptions.numerical import (OracleMismatchError,
                                                   UndefinedEssError)
from ergm_calibration.inference.calibration import RobbinsMonroConfig
from ergm_calibration.inference.diagnostics import (efficiency_ratio,
                                                    kde_density_grid,
                                                    relative_efficiency,
                                                    summarize_chain, tv_grid)
from ergm_calibration.inference.samplers import exchange_sweep
from ergm_calibration.io.artifacts import (write_calibration_map,
                                           write_chain_csv, write_density_csv,
                                           write_edge_histogram,
                                           write_summary, write_text,
                                           write_timings, write_tv_grid)
from ergm_calibration.services.calibrator import ErgmCalibrator
from ergm_calibration.services.oracle_check import (fixture_graph,
                                                    run_oracle_checks)


@dataclass(slots=True)
class RunReport:
    mode: str
    out_dir: Path
    artifacts: dict[str, Path] = field(default_factory=dict)
    summaries: dict[str, SummaryTable] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def add(self, name: str, path: Path) -> None:
        self.artifacts[name] = path


def rm_config(cfg: RunConfig) -> RobbinsMonroConfig:
    c = cfg.calibration
    return RobbinsMonroConfig(
        alpha=c.alpha, tol=c.tol, max_iters=c.max_iters, persistence=c.persistence,
        graphs=c.graphs, burn=c.burn, thin=c.thin, chains=c.chains,
        hessian_graphs=c.hessian_graphs,
    )


def _summaries(report: RunReport, chains: dict[str, McmcChain]) -> None:
    for title, chain in chains.items():
        try:
            report.summaries[title] = summarize_chain(chain)
        except UndefinedEssError as exc:
            report.notes.append(f"{title}: no summary ({exc})")


def _densities(report: RunReport, chains: dict[str, McmcChain], points: int) -> None:
    first = next(iter(chains.values()))
    for k, label in enumerate(first.labels):
        curves = {}
        for name, chain in chains.items():
            try:
                curves[name] = kde_density_grid(chain.draws[:, k], points=points)
            except (UndefinedEssError, np.linalg.LinAlgError):
                continue
        if curves:
            safe = label.replace("/", "_")
            report.add(f"density_{safe}", write_density_csv(curves, report.out_dir / f"density_{safe}.csv"))


def _finish(report: RunReport, calibrator: ErgmCalibrator, main: str | None, baseline: str | None = None) -> None:
    out = report.out_dir
    if report.summaries or report.notes:
        report.add("summary", write_summary(report.summaries, out / SUMMARY_FILE, notes=report.notes))
    timings = calibrator.timings
    exchange_cpu = timings.stages.get("approximate exchange", 0.0)
    min_ess = report.summaries[main].min_ess if main in report.summaries else None
    cpu = timings.total if main == "exchange" else timings.total - exchange_cpu
    er = relative = None
    if min_ess is not None and cpu > 0:
        er = efficiency_ratio(min_ess, cpu)
        if baseline in report.summaries and exchange_cpu > 0:
            baseline_er = efficiency_ratio(report.summaries[baseline].min_ess, exchange_cpu)
            relative = relative_efficiency(er, baseline_er)
    report.add("timings", write_timings(timings, out / TIMINGS_FILE, min_ess=min_ess,
                                        efficiency=er, relative=relative))


def _pseudo_chain(cfg: RunConfig, calibrator: ErgmCalibrator) -> McmcChain:
    return calibrator.sample_pseudo_posterior(
        iterations=cfg.sampler.iterations,
        burn_in=cfg.sampler.burn_in,
        tuning=cfg.sampler.tuning,
        theta0=cfg.sampler.theta0,
    )


def _calibrated_chain(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> tuple[McmcChain, McmcChain]:
    raw = _pseudo_chain(cfg, calibrator)
    theta0 = cfg.calibration.theta0
    if theta0 is None and cfg.calibration.start == "zero":
        theta0 = [0.0] * calibrator.model.d
    found, cal_map = calibrator.calibrate(rm_config(cfg), theta0=theta0)
    if not found.converged:
        report.notes.append(f"Robbins-Monro stopped at max_iters={cfg.calibration.max_iters}")
    report.notes.append(f"Robbins-Monro iterations: {found.iterations}")
    report.add("calibration_map", write_calibration_map(cal_map, report.out_dir / CALIBRATION_MAP_FILE))
    if cfg.calibration.direct:
        calibrated = calibrator.sample_calibrated(
            cal_map, iterations=cfg.sampler.iterations, burn_in=cfg.sampler.burn_in,
            tuning=cfg.sampler.tuning,
        )
    else:
        calibrated = calibrator.correct(raw, cal_map)
    return raw, calibrated


def _exchange_chain(cfg: RunConfig, calibrator: ErgmCalibrator) -> McmcChain:
    return calibrator.sample_exchange(
        iterations=cfg.exchange.iterations or cfg.sampler.iterations,
        burn_in=cfg.sampler.burn_in if cfg.exchange.burn_in is None else cfg.exchange.burn_in,
        aux_iters=cfg.exchange.aux_iters,
        tuning=cfg.sampler.tuning,
        theta0=cfg.sampler.theta0,
    )


# =========================
# Modes
# =========================

def _run_pseudo(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> None:
    raw = _pseudo_chain(cfg, calibrator)
    report.add("chain_raw", write_chain_csv(raw, report.out_dir / CHAIN_RAW_FILE))
    chains = {"pseudo-posterior": raw}
    _summaries(report, chains)
    _densities(report, chains, cfg.output.density_points)
    _finish(report, calibrator, "pseudo-posterior")


def _run_calibrate(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> None:
    raw, calibrated = _calibrated_chain(cfg, calibrator, report)
    out = report.out_dir
    report.add("chain_raw", write_chain_csv(raw, out / CHAIN_RAW_FILE))
    report.add("chain_calibrated", write_chain_csv(calibrated, out / CHAIN_CALIBRATED_FILE))
    chains = {"pseudo-posterior": raw, "calibrated": calibrated}

    if cfg.exchange.compare:
        exchange = _exchange_chain(cfg, calibrator)
        report.add("chain_aea", write_chain_csv(exchange, out / CHAIN_EXCHANGE_FILE))
        chains["exchange"] = exchange
        if calibrator.model.d == 2:
            grid = tv_grid(calibrated.draws, exchange.draws, bins=cfg.output.tv_bins)
            report.add("tv_grid", write_tv_grid(grid, out / TV_GRID_FILE, names=("calibrated", "exchange")))
            report.notes.append(f"TV(calibrated, exchange) = {grid.distance:.3f}")

    if cfg.degeneracy.enabled:
        _degeneracy(cfg, calibrator, report, calibrated if cfg.degeneracy.chain == "calibrated" else raw)

    _summaries(report, chains)
    _densities(report, chains, cfg.output.density_points)
    _finish(report, calibrator, "calibrated", "exchange")


def _run_aea(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> None:
    exchange = _exchange_chain(cfg, calibrator)
    report.add("chain_aea", write_chain_csv(exchange, report.out_dir / CHAIN_EXCHANGE_FILE))
    chains = {"exchange": exchange}

    if cfg.exchange.sweep:
        if calibrator.model.d != 2:
            report.notes.append("Auxiliary-length sweep skipped: TV is defined for two parameters only")
        else:
            points = calibrator.stage(
                "exchange sweep", exchange_sweep,
                calibrator.graph, calibrator.model, calibrator.prior, calibrator.proposal(cfg.sampler.tuning),
                calibrator.mode().theta, exchange, cfg.exchange.sweep,
                iterations=cfg.exchange.iterations or cfg.sampler.iterations,
                burn_in=cfg.sampler.burn_in if cfg.exchange.burn_in is None else cfg.exchange.burn_in,
                bins=cfg.output.tv_bins, seed=calibrator.rng("exchange"),
            )
            for point in points:
                report.notes.append(f"aux_iters={point.aux_iters}: TV to reference = {point.tv:.3f}")

    _summaries(report, chains)
    _densities(report, chains, cfg.output.density_points)
    _finish(report, calibrator, "exchange")


def _degeneracy(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport, chain: McmcChain) -> bool:
    d = cfg.degeneracy
    result = calibrator.degeneracy(
        chain,
        draws_per_theta=d.draws_per_theta,
        subsample=d.subsample,
        density_threshold=d.density,
        fraction_threshold=d.fraction,
        bins=d.bins,
    )
    report.add("edge_histogram", write_edge_histogram(result, report.out_dir / EDGE_HISTOGRAM_FILE))
    report.notes.append(
        f"degeneracy check: {result.high_density_share:.1%} of {result.edge_counts.size} networks above "
        f"{d.density:.0%} density; observed edges {result.observed_edges}; "
        f"flag {'RAISED' if result.degenerate else 'clear'}"
    )
    return result.degenerate


def _run_degeneracy(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> None:
    if cfg.degeneracy.chain == "raw":
        chain = _pseudo_chain(cfg, calibrator)
        report.add("chain_raw", write_chain_csv(chain, report.out_dir / CHAIN_RAW_FILE))
    else:
        raw, chain = _calibrated_chain(cfg, calibrator, report)
        report.add("chain_raw", write_chain_csv(raw, report.out_dir / CHAIN_RAW_FILE))
        report.add("chain_calibrated", write_chain_csv(chain, report.out_dir / CHAIN_CALIBRATED_FILE))
    _degeneracy(cfg, calibrator, report, chain)
    _finish(report, calibrator, None)


def _run_oracle(cfg: RunConfig, calibrator: ErgmCalibrator, report: RunReport) -> None:
    checks = run_oracle_checks(cfg, calibrator)
    report.add("oracle_report", write_text([c.to_line() for c in checks], report.out_dir / ORACLE_REPORT_FILE))
    _finish(report, calibrator, None)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        raise OracleMismatchError(f"{len(failed)} oracle check(s) failed: {failed}")


_MODES = {
    "pseudo": _run_pseudo,
    "calibrate": _run_calibrate,
    "aea": _run_aea,
    "degeneracy-check": _run_degeneracy,
    "oracle-test": _run_oracle,
}


def run_pipeline(cfg: RunConfig) -> RunReport:
    """
    Execute ``cfg.mode`` and write its artifacts under ``cfg.output.dir``.

    Raises:
        StageFailedError: a stage failed; carries the stage name and cause
        OracleMismatchError: oracle-test mode found a disagreement
    """
    out_dir = Path(cfg.output.dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    graph = fixture_graph(cfg.oracle.n) if cfg.mode == "oracle-test" and cfg.data.edges is None else None
    calibrator = ErgmCalibrator.from_config(cfg, graph=graph)
    report = RunReport(mode=cfg.mode, out_dir=out_dir)

    logger.info(f"Run '{cfg.mode}' on {calibrator.graph!r}, seed {cfg.seed}, output {out_dir}")
    _MODES[cfg.mode](cfg, calibrator, report)
    logger.info(f"Run '{cfg.mode}' finished: {sorted(report.artifacts)}")
    return report
