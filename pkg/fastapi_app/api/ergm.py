import numpy as np
from fastapi import APIRouter, HTTPException

from ergm_calibration.domain.models.chain import McmcChain
from ergm_calibration.domain.models.graph import Graph, NodeAttribute
from ergm_calibration.domain.models.model_spec import ModelSpec
from ergm_calibration.domain.models.prior import GaussianPrior
from ergm_calibration.exceptions import (ConfigError, ConvergenceError,
                                         ErgmCalibrationError, GraphError,
                                         ModelError, NumericalError,
                                         StageFailedError)
from ergm_calibration.inference.diagnostics import summarize_chain
from ergm_calibration.services.calibrator import ErgmCalibrator
from ergm_calibration.statistics.registry import TermRegistry
from fastapi_app.api.schemas import (GraphRequest, MpleRequest,
                                     PseudoPosteriorRequest, SummarizeRequest)

router = APIRouter(prefix="/ergm", tags=["ERGM"])


# =========================
# Helpers (demo-friendly)
# =========================

def get_calibrator(payload: GraphRequest, *, prior_variance: float = 30.0, seed: int | None = None) -> ErgmCalibrator:
    attributes = {
        name: NodeAttribute.from_values(name, values)
        for name, values in (payload.attributes or {}).items()
    }
    graph = Graph.from_edges(payload.n, payload.edges, attributes=attributes)
    model = ModelSpec.parse(payload.terms)
    return ErgmCalibrator(
        graph,
        model,
        prior=GaussianPrior.default(model.d, prior_variance),
        seed=seed,
    )


def handle_error(exc: Exception) -> None:
    """Map exceptions to appropriate HTTP status codes."""
    if isinstance(exc, StageFailedError):
        exc = exc.cause

    # 400 Bad Request - Client input errors
    if isinstance(exc, (ConfigError, GraphError, ModelError)):
        raise HTTPException(status_code=400, detail=str(exc))

    # 422 Unprocessable - The data admit no numerical answer
    if isinstance(exc, NumericalError):
        raise HTTPException(status_code=422, detail={"error": str(exc), "hint": exc.hint})

    # 409 Conflict - Iterative procedure did not settle
    if isinstance(exc, ConvergenceError):
        raise HTTPException(status_code=409, detail={"error": str(exc), "hint": exc.hint})

    if isinstance(exc, ErgmCalibrationError):
        raise HTTPException(status_code=500, detail=str(exc))

    # Default: re-raise anything unexpected
    raise exc


# =========================
# Health
# =========================

@router.get("/health")
def health():
    return {"status": "ok", "terms": TermRegistry.list_terms()}


# =========================
# Statistics
# =========================

@router.post("/statistics")
def statistics(payload: GraphRequest):
    try:
        calibrator = get_calibrator(payload)
        return {
            "labels": list(calibrator.model.labels),
            "statistics": calibrator.statistics().tolist(),
            "edge_count": calibrator.graph.edge_count,
            "density": calibrator.graph.density,
        }
    except Exception as exc:
        handle_error(exc)


# =========================
# Pseudolikelihood
# =========================

@router.post("/mple")
def maximum_pseudolikelihood(payload: MpleRequest):
    try:
        calibrator = get_calibrator(payload, prior_variance=payload.prior_variance)
        result = calibrator.mode(with_prior=payload.with_prior)
        return {"labels": list(calibrator.model.labels), **result.to_dict()}
    except Exception as exc:
        handle_error(exc)


@router.post("/pseudo-posterior")
def pseudo_posterior(payload: PseudoPosteriorRequest):
    try:
        calibrator = get_calibrator(payload, prior_variance=payload.prior_variance, seed=payload.seed)
        chain = calibrator.sample_pseudo_posterior(
            iterations=payload.iterations,
            burn_in=payload.burn_in,
            tuning=payload.tuning,
        )
        return {
            "summary": summarize_chain(chain).to_dict(),
            "labels": list(chain.labels),
            "mode": calibrator.mode().theta.tolist(),
        }
    except Exception as exc:
        handle_error(exc)


# =========================
# Summaries
# =========================

@router.post("/summarize")
def summarize(payload: SummarizeRequest):
    try:
        draws = np.asarray(payload.draws, dtype=np.float64)
        if draws.ndim != 2:
            raise HTTPException(status_code=400, detail="draws must be a rectangular T×d array")
        moved = int(np.any(draws[1:] != draws[:-1], axis=1).sum())
        chain = McmcChain(
            draws=draws,
            log_target=np.zeros(draws.shape[0]),
            accepted=moved,
            burn_in=0,
            seed=None,
            wall_time=0.0,
            labels=tuple(payload.labels or ()),
        )
        return summarize_chain(chain).to_dict()
    except HTTPException:
        raise
    except Exception as exc:
        handle_error(exc)
