from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from ergm_calibration.core.config import PriorConfig, RunConfig
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.calibration_map import CalibrationMap
from ergm_calibration.domain.models.chain import McmcChain, ProposalSpec
from ergm_calibration.domain.models.change_stats import ChangeStatMatrix
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.domain.models.results import (DegeneracyReport,
                                                    MpleResult,
                                                    RobbinsMonroResult,
                                                    StageTimings)
from ergm_calibration.exceptions.convergence import ConvergenceError
from ergm_calibration.exceptions.numerical import NumericalError
from ergm_calibration.exceptions.pipeline import StageFailedError
from ergm_calibration.inference.calibration import (CalibratedSurface,
                                                    RobbinsMonroConfig,
                                                    build_map, correct_sample,
                                                    estimate_true_hessian,
                                                    robbins_monro_map)
from ergm_calibration.inference.diagnostics import degeneracy_check
from ergm_calibration.inference.pseudolikelihood import (
    PseudoPosteriorSurface, hess_log_pl, mple)
from ergm_calibration.inference.samplers import (approximate_exchange,
                                                 mh_pseudo_posterior)
from ergm_calibration.inference.tnt import simulate_stats
from ergm_calibration.io.edge_list import load_graph
from ergm_calibration.services.pipeline_core import PipelineCore
from ergm_calibration.statistics.evaluator import (change_stat_matrix,
                                                   sufficient_statistics)

# Independent random streams per stage, derived from the run seed
_STREAMS = {
    "pseudo": 1,
    "map": 2,
    "hessian": 3,
    "exchange": 4,
    "degeneracy": 5,
    "oracle": 6,
}


def build_prior(cfg: PriorConfig, d: int) -> GaussianPrior:
    mean = np.zeros(d) if cfg.mean is None else np.asarray(cfg.mean, dtype=np.float64)
    if cfg.covariance is not None:
        return GaussianPrior(mean=mean, covariance=np.asarray(cfg.covariance, dtype=np.float64))
    return GaussianPrior(mean=mean, covariance=cfg.variance * np.eye(d))


class ErgmCalibrator:
    """
    Public entry point for Bayesian ERGM fitting.

    This is the main entry point for consuming applications.
    It hides:
    - Change-statistic compilation and caching
    - Stage timing and error wrapping
    - Seed handling (one independent stream per stage)
    """

    def __init__(
        self,
        graph: Graph,
        model: ModelSpec,
        *,
        prior: GaussianPrior | None = None,
        seed: int | None = None,
        timings: StageTimings | None = None,
    ) -> None:
        self._graph = graph.copy().freeze()
        self._model = model
        self._prior = prior or GaussianPrior.default(model.d)
        if self._prior.d != model.d:
            raise NumericalError(f"Prior dimension {self._prior.d} does not match {model.d} terms")
        self._seed = seed
        self._core = PipelineCore(timings)
        self._csm: ChangeStatMatrix | None = None
        self._modes: dict[bool, MpleResult] = {}
        self._start: np.ndarray | None = None
        logger.debug(f"Initializing ErgmCalibrator: {self._graph!r}, terms={model.labels}")

    @classmethod
    def from_config(cls, cfg: RunConfig, *, graph: Graph | None = None) -> ErgmCalibrator:
        model = ModelSpec.parse(cfg.model.terms)
        if graph is None:
            graph = load_graph(
                cfg.data.edges,
                cfg.data.attributes,
                one_indexed=cfg.data.one_indexed,
                n=cfg.data.n,
            )
        return cls(graph, model, prior=build_prior(cfg.prior, model.d), seed=cfg.seed)

    # =========================
    # Accessors
    # =========================

    @property
    def graph(self) -> Graph:
        return self._graph

    @property
    def model(self) -> ModelSpec:
        return self._model

    @property
    def prior(self) -> GaussianPrior:
        return self._prior

    @property
    def timings(self) -> StageTimings:
        return self._core.timings

    def stage(self, name: str, fn, /, *args, **kwargs):
        """Run ``fn`` as an extra timed stage of this calibrator."""
        return self._core.run(name, fn, *args, **kwargs)

    def rng(self, stream: str) -> np.random.Generator:
        """Generator for one stage, fixed by the run seed and the stage name."""
        if self._seed is None:
            return np.random.default_rng()
        return np.random.default_rng([self._seed, _STREAMS[stream]])

    # =========================
    # Statistics / pseudolikelihood
    # =========================

    def statistics(self) -> np.ndarray:
        """s(y) of the observed graph."""
        return sufficient_statistics(self._graph, self._model)

    def change_stats(self) -> ChangeStatMatrix:
        if self._csm is None:
            self._csm = self._core.run("change statistics", change_stat_matrix,
                                       self._graph, self._model)
        return self._csm

    def mode(self, *, with_prior: bool = True) -> MpleResult:
        """θ̂_PL with Ĥ_PL (``with_prior``) or the plain MPLE."""
        if with_prior not in self._modes:
            stage = "pseudo-posterior mode" if with_prior else "MPLE"
            self._modes[with_prior] = self._core.run(
                stage, mple, self.change_stats(), self._prior if with_prior else None
            )
        return self._modes[with_prior]

    def _mple_or_mode(self) -> np.ndarray:
        """The plain MPLE, or θ̂_PL when the MPLE does not exist."""
        if self._start is None:
            try:
                self._start = self.mode(with_prior=False).theta
            except StageFailedError as exc:
                if not isinstance(exc.cause, (NumericalError, ConvergenceError)):
                    raise
                logger.warning(f"MPLE unavailable ({exc.cause}); using the pseudo-posterior mode")
                self._start = self.mode(with_prior=True).theta
        return self._start

    def surface(self) -> PseudoPosteriorSurface:
        return PseudoPosteriorSurface(self.change_stats(), self._prior)

    def proposal(self, tuning: float | Sequence[float] = 1.0) -> ProposalSpec:
        """
        Σ = T (B₀ + C⁻¹)⁻¹ T with C⁻¹ = −∇² log_pl at the MPLE.

        When the plain MPLE does not exist the curvature is taken at the
        pseudo-posterior mode instead.
        """
        theta = self._mple_or_mode()
        return ProposalSpec.from_curvature(
            tuning=np.asarray(tuning, dtype=np.float64),
            prior_precision=self._prior.precision,
            likelihood_precision=-hess_log_pl(theta, self.change_stats()),
        )

    # =========================
    # Sampling
    # =========================

    def sample_pseudo_posterior(
        self,
        *,
        iterations: int,
        burn_in: int,
        tuning: float | Sequence[float] = 1.0,
        theta0: Sequence[float] | None = None,
    ) -> McmcChain:
        start = self.mode().theta if theta0 is None else np.asarray(theta0, dtype=np.float64)
        return self._core.run(
            "pseudo-posterior sampling", mh_pseudo_posterior,
            self.surface(), self.proposal(tuning), start,
            iterations=iterations, burn_in=burn_in, seed=self.rng("pseudo"),
            labels=self._model.labels,
        )

    def sample_exchange(
        self,
        *,
        iterations: int,
        burn_in: int,
        aux_iters: int,
        tuning: float | Sequence[float] = 1.0,
        theta0: Sequence[float] | None = None,
    ) -> McmcChain:
        start = self.mode().theta if theta0 is None else np.asarray(theta0, dtype=np.float64)
        return self._core.run(
            "approximate exchange", approximate_exchange,
            self._graph, self._model, self._prior, self.proposal(tuning), start,
            iterations=iterations, burn_in=burn_in, aux_iters=aux_iters,
            seed=self.rng("exchange"),
        )

    # =========================
    # Calibration
    # =========================

    def find_map(
        self,
        cfg: RobbinsMonroConfig,
        *,
        theta0: Sequence[float] | None = None,
    ) -> RobbinsMonroResult:
        start = self._mple_or_mode() if theta0 is None else np.asarray(theta0, dtype=np.float64)
        return self._core.run(
            "MAP estimation", robbins_monro_map,
            start, cfg, self._graph, self._model, self._prior,
            observed_stats=self.statistics(), seed=self.rng("map"),
        )

    def true_hessian(self, theta_star: np.ndarray, cfg: RobbinsMonroConfig) -> np.ndarray:
        def estimate() -> np.ndarray:
            sample = simulate_stats(
                theta_star, self._model, self._graph,
                burn=cfg.burn, draws=cfg.hessian_graphs, thin=cfg.thin,
                seed=self.rng("hessian"), chains=cfg.chains,
            )
            return estimate_true_hessian(theta_star, sample, self._prior)

        return self._core.run("Hessian estimation", estimate)

    def calibration_map(self, theta_star: np.ndarray, h_star: np.ndarray) -> CalibrationMap:
        mode = self.mode()
        return self._core.run("calibration map", build_map,
                              theta_star, h_star, mode.theta, mode.hessian)

    def correct(self, chain: McmcChain, cal_map: CalibrationMap) -> McmcChain:
        return self._core.run("correction", correct_sample, chain, cal_map)

    def sample_calibrated(
        self,
        cal_map: CalibrationMap,
        *,
        iterations: int,
        burn_in: int,
        tuning: float | Sequence[float] = 1.0,
    ) -> McmcChain:
        """Sample π̃ directly instead of correcting pseudo-posterior draws."""
        proposal = self.proposal(tuning)
        # The calibrated target's curvature is H*, so the proposal is mapped by V
        scaled = ProposalSpec(
            tuning=proposal.tuning,
            covariance=cal_map.v @ proposal.covariance @ cal_map.v.T,
        )
        return self._core.run(
            "calibrated sampling", mh_pseudo_posterior,
            CalibratedSurface(self.surface(), cal_map), scaled, cal_map.theta_star,
            iterations=iterations, burn_in=burn_in, seed=self.rng("pseudo"),
            labels=self._model.labels,
        )

    def calibrate(
        self,
        cfg: RobbinsMonroConfig,
        *,
        theta0: Sequence[float] | None = None,
    ) -> tuple[RobbinsMonroResult, CalibrationMap]:
        """θ*, then H* at θ*, then the affine map."""
        found = self.find_map(cfg, theta0=theta0)
        h_star = self.true_hessian(found.theta, cfg)
        return found, self.calibration_map(found.theta, h_star)

    # =========================
    # Diagnostics
    # =========================

    def degeneracy(self, chain: McmcChain, **kwargs) -> DegeneracyReport:
        return self._core.run(
            "degeneracy check", degeneracy_check,
            chain, self._model, self._graph, seed=self.rng("degeneracy"), **kwargs,
        )
