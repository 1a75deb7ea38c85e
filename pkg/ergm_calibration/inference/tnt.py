"""
Tie-no-tie (TNT) simulation of graphs from p(y|θ) ∝ exp{θᵀs(y)}.

Each step proposes, with probability ½, to delete a uniformly chosen
existing edge and otherwise to toggle a uniformly chosen dyad. The
Metropolis ratio carries the exact proposal asymmetry so the kernel is
in detailed balance with p(y|θ).

Random numbers are drawn up front from a numpy ``Generator`` (four
uniforms per step) and handed to the compiled kernel, which makes every
run reproducible from its seed.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ergm_calibration.core import kernels
from ergm_calibration.core.constant import TNT_BURN_IN, TNT_DRAWS, TNT_THIN
from ergm_calibration.core.logging import logger
from ergm_calibration.domain.models.chain import GraphSample
from ergm_calibration.domain.models.graph import Graph
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.exceptions.graph import GraphStructureError
from ergm_calibration.exceptions.numerical import DomainError
from ergm_calibration.statistics.evaluator import (TermTable, compile_terms,
                                                   sufficient_statistics)

SeedLike = int | np.random.Generator | np.random.SeedSequence | None


def _theta(theta: np.ndarray, d: int) -> np.ndarray:
    theta = np.atleast_1d(np.asarray(theta, dtype=np.float64))
    if theta.shape != (d,) or not np.all(np.isfinite(theta)):
        raise DomainError(f"θ must be a finite vector of length {d}, got {theta}")
    return theta


def _initial_graph(initial: Graph | int) -> Graph:
    if isinstance(initial, Graph):
        return initial.copy()
    return Graph(int(initial))


@dataclass(slots=True)
class TntState:
    """
    A graph owned by one TNT chain, its compiled model and running s(y).
    """

    graph: Graph
    table: TermTable
    stats: np.ndarray
    accepted: int = 0
    steps: int = 0
    _log: np.ndarray = field(default_factory=lambda: np.zeros((0, 2), dtype=np.int64), repr=False)

    @classmethod
    def start(cls, model: ModelSpec, initial: Graph | int) -> TntState:
        graph = _initial_graph(initial)
        if graph.n < 2:
            raise GraphStructureError("TNT needs at least two nodes")
        return cls(
            graph=graph,
            table=compile_terms(model, graph),
            stats=sufficient_statistics(graph, model),
        )

    def advance(
        self,
        theta: np.ndarray,
        rng: np.random.Generator,
        steps: int,
        *,
        burn: int = 0,
        thin: int = 1,
        rows: int = 0,
        record_toggles: bool = False,
    ) -> tuple[np.ndarray, np.ndarray, int]:
        """
        Run ``steps`` TNT steps at θ.

        Returns the recorded statistic rows, their densities and the number
        of toggles written to the undo log (0 unless ``record_toggles``).
        """
        theta = _theta(theta, self.table.d)
        uniforms = rng.random((steps, 4))
        out_stats = np.empty((rows, self.table.d))
        out_density = np.empty(rows)
        if record_toggles and self._log.shape[0] < steps:
            self._log = np.zeros((steps, 2), dtype=np.int64)
        log = self._log if record_toggles else np.zeros((0, 2), dtype=np.int64)
        buffers = self.graph.buffers()
        accepted, logged = kernels.tnt_run(
            buffers.adj, buffers.degree, buffers.edges, buffers.edge_pos, buffers.edge_count,
            theta, self.table.codes, self.table.params, self.table.indicators,
            uniforms, self.stats, burn, thin, out_stats, out_density, log,
        )
        self.accepted += int(accepted)
        self.steps += steps
        return out_stats, out_density, int(logged)

    def rewind(self, logged: int, stats: np.ndarray) -> None:
        """Undo the last ``logged`` recorded toggles and reset s(y)."""
        buffers = self.graph.buffers()
        kernels.undo_toggles(buffers.adj, buffers.degree, buffers.edges, buffers.edge_pos,
                             buffers.edge_count, self._log, logged)
        self.stats[:] = stats


# =========================
# Public API
# =========================

def tnt_step(graph: Graph, theta: np.ndarray, model: ModelSpec, rng: np.random.Generator) -> Graph:
    """One TNT Metropolis step applied to ``graph`` in place."""
    if graph.frozen:
        raise GraphStructureError("Cannot run TNT on a frozen graph")
    if graph.n < 2:
        raise GraphStructureError("TNT needs at least two nodes")
    table = compile_terms(model, graph)
    theta = _theta(theta, table.d)
    buffers = graph.buffers()
    kernels.tnt_run(
        buffers.adj, buffers.degree, buffers.edges, buffers.edge_pos, buffers.edge_count,
        theta, table.codes, table.params, table.indicators,
        rng.random((1, 4)), np.zeros(table.d), 0, 1,
        np.empty((0, table.d)), np.empty(0), np.zeros((0, 2), dtype=np.int64),
    )
    return graph


def simulate_graph(
    theta: np.ndarray,
    model: ModelSpec,
    initial: Graph | int,
    *,
    steps: int = TNT_BURN_IN,
    seed: SeedLike = None,
) -> Graph:
    """Final state of a ``steps``-long TNT run started from ``initial``."""
    state = TntState.start(model, initial)
    if steps > 0:
        state.advance(theta, np.random.default_rng(seed), steps)
    return state.graph


def _run_chain(
    theta: np.ndarray,
    model: ModelSpec,
    initial: Graph | int,
    burn: int,
    draws: int,
    thin: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    state = TntState.start(model, initial)
    stats, densities, _ = state.advance(
        theta, rng, burn + draws * thin, burn=burn, thin=thin, rows=draws
    )
    return stats, densities


def simulate_stats(
    theta: np.ndarray,
    model: ModelSpec,
    initial: Graph | int,
    *,
    burn: int = TNT_BURN_IN,
    draws: int = TNT_DRAWS,
    thin: int = TNT_THIN,
    seed: SeedLike = None,
    chains: int = 1,
) -> GraphSample:
    """
    Sufficient statistics of ``draws`` thinned TNT states at θ.

    ``initial`` is the starting graph (usually the observed one) or a node
    count for an empty start. With ``chains > 1`` the draws are split over
    independent chains, each with its own burn-in and its own child
    stream of ``seed``, and pooled chain by chain.
    """
    if draws < 1:
        raise ValueError(f"draws must be >= 1, got {draws}")
    if burn < 0 or thin < 1 or chains < 1:
        raise ValueError(f"Invalid TNT settings: burn={burn}, thin={thin}, chains={chains}")
    theta = _theta(theta, model.d)
    rng = np.random.default_rng(seed)

    if chains == 1:
        stats, densities = _run_chain(theta, model, initial, burn, draws, thin, rng)
    else:
        sizes = [draws // chains + (1 if c < draws % chains else 0) for c in range(chains)]
        sizes = [s for s in sizes if s > 0]
        streams = rng.spawn(len(sizes))
        with ThreadPoolExecutor(max_workers=len(sizes)) as pool:
            futures = [
                pool.submit(_run_chain, theta, model, initial, burn, size, thin, stream)
                for size, stream in zip(sizes, streams)
            ]
            parts = [f.result() for f in futures]
        stats = np.vstack([p[0] for p in parts])
        densities = np.concatenate([p[1] for p in parts])

    logger.debug(
        f"TNT at θ={np.round(theta, 4)}: {draws} draws, mean density {densities.mean():.3f}"
    )
    return GraphSample(
        theta=theta,
        stats=stats,
        densities=densities,
        aux_iters=burn + draws * thin,
        burn_in=burn,
        thinning=thin,
        chains=len(sizes) if chains > 1 else 1,
    )
