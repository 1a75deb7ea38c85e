"""
Run configuration.

A run is described by a TOML file with one table per stage; every
field defaults to the values in ``core.constant``. Example::

    mode = "calibrate"
    seed = 2024

    [data]
    edges = "data/eroad_edges.txt"
    one_indexed = true

    [model]
    terms = ["edges", "kstar{k=2}"]

    [sampler]
    iterations = 40000
    burn_in = 10000
    tuning = [1.0, 1.0]
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import Any, Literal

from pydantic import (BaseModel, ConfigDict, Field, ValidationError,
                      model_validator)

from ergm_calibration.core.constant import (AEA_AUX_ITERS, CHAIN_BURN_IN,
                                            CHAIN_ITERATIONS,
                                            DEGENERACY_DENSITY,
                                            DEGENERACY_DRAWS_PER_THETA,
                                            DEGENERACY_FRACTION,
                                            DEGENERACY_SUBSAMPLE,
                                            EDGE_HISTOGRAM_BINS,
                                            HESSIAN_GRAPHS, KDE_POINTS,
                                            ORACLE_GRID_POINTS,
                                            ORACLE_MAX_NODES, PRIOR_VARIANCE,
                                            PROPOSAL_TUNING, RM_ALPHA,
                                            RM_MAX_ITERS, RM_PERSISTENCE,
                                            RM_TOL, TNT_BURN_IN, TNT_DRAWS,
                                            TNT_THIN, TV_BINS)
from ergm_calibration.exceptions.config import ConfigError

Mode = Literal["pseudo", "calibrate", "aea", "degeneracy-check", "oracle-test"]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class DataConfig(_Section):
    edges: Path | None = None
    attributes: Path | None = None
    one_indexed: bool = False
    n: int | None = Field(default=None, ge=2)


class ModelConfig(_Section):
    terms: list[str] = Field(default_factory=lambda: ["edges"], min_length=1)


class PriorConfig(_Section):
    mean: list[float] | None = None
    variance: float = Field(default=PRIOR_VARIANCE, gt=0)
    covariance: list[list[float]] | None = None


class SamplerConfig(_Section):
    iterations: int = Field(default=CHAIN_ITERATIONS, ge=1)
    burn_in: int = Field(default=CHAIN_BURN_IN, ge=0)
    tuning: float | list[float] = PROPOSAL_TUNING
    theta0: list[float] | None = None


class CalibrationConfig(_Section):
    alpha: float = Field(default=RM_ALPHA, gt=0)
    tol: float = Field(default=RM_TOL, gt=0)
    max_iters: int = Field(default=RM_MAX_ITERS, ge=1)
    persistence: int = Field(default=RM_PERSISTENCE, ge=1)
    graphs: int = Field(default=TNT_DRAWS, ge=1)
    burn: int = Field(default=TNT_BURN_IN, ge=0)
    thin: int = Field(default=TNT_THIN, ge=1)
    chains: int = Field(default=1, ge=1)
    hessian_graphs: int = Field(default=HESSIAN_GRAPHS, ge=2)
    start: Literal["mple", "zero"] = "mple"
    theta0: list[float] | None = None
    direct: bool = False


class ExchangeConfig(_Section):
    aux_iters: int = Field(default=AEA_AUX_ITERS, ge=1)
    iterations: int | None = Field(default=None, ge=1)
    burn_in: int | None = Field(default=None, ge=0)
    compare: bool = False
    sweep: list[int] = Field(default_factory=list)


class DegeneracyConfig(_Section):
    enabled: bool = False
    chain: Literal["raw", "calibrated"] = "calibrated"
    subsample: int = Field(default=DEGENERACY_SUBSAMPLE, ge=1)
    draws_per_theta: int = Field(default=DEGENERACY_DRAWS_PER_THETA, ge=1)
    density: float = Field(default=DEGENERACY_DENSITY, gt=0, lt=1)
    fraction: float = Field(default=DEGENERACY_FRACTION, ge=0, lt=1)
    bins: int = Field(default=EDGE_HISTOGRAM_BINS, ge=1)


class OracleConfig(_Section):
    n: int = Field(default=4, ge=2, le=ORACLE_MAX_NODES)
    thetas: list[list[float]] = Field(
        default_factory=lambda: [[-1.0, 0.5], [-0.5, 0.2], [0.0, -0.5]]
    )
    tnt_draws: int = Field(default=4000, ge=10)
    grid_points: int = Field(default=ORACLE_GRID_POINTS, ge=3)
    grid_sds: float = Field(default=5.0, gt=0)
    tolerance_se: float = Field(default=3.0, gt=0)
    map_tolerance: float = Field(default=0.05, gt=0)
    rm_alpha: float = Field(default=3.0, gt=0)
    rm_tol: float = Field(default=1e-4, gt=0)
    rm_max_iters: int = Field(default=2_000, ge=1)
    tv_limit: float = Field(default=0.1, gt=0, le=1)
    iterations: int = Field(default=20_000, ge=1)
    aux_iters: int = Field(default=5_000, ge=1)
    replicates: int = Field(default=10, ge=2)


class OutputConfig(_Section):
    dir: Path = Path("out")
    density_points: int = Field(default=KDE_POINTS, ge=16)
    tv_bins: int = Field(default=TV_BINS, ge=2)


class RunConfig(_Section):
    """Complete, validated description of one pipeline run."""

    mode: Mode = "calibrate"
    seed: int
    data: DataConfig = Field(default_factory=DataConfig)
    model: ModelConfig = Field(default_factory=ModelConfig)
    prior: PriorConfig = Field(default_factory=PriorConfig)
    sampler: SamplerConfig = Field(default_factory=SamplerConfig)
    calibration: CalibrationConfig = Field(default_factory=CalibrationConfig)
    exchange: ExchangeConfig = Field(default_factory=ExchangeConfig)
    degeneracy: DegeneracyConfig = Field(default_factory=DegeneracyConfig)
    oracle: OracleConfig = Field(default_factory=OracleConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _mode_requirements(self) -> RunConfig:
        if self.mode != "oracle-test" and self.data.edges is None:
            raise ValueError(f"mode '{self.mode}' needs data.edges")
        d = len(self.model.terms)
        for name, value in (
            ("prior.mean", self.prior.mean),
            ("sampler.theta0", self.sampler.theta0),
            ("calibration.theta0", self.calibration.theta0),
        ):
            if value is not None and len(value) != d:
                raise ValueError(f"{name} has {len(value)} entries for {d} model terms")
        if isinstance(self.sampler.tuning, list) and len(self.sampler.tuning) != d:
            raise ValueError(f"sampler.tuning has {len(self.sampler.tuning)} entries for {d} model terms")
        if self.mode == "oracle-test" and any(len(t) != d for t in self.oracle.thetas):
            raise ValueError(f"every oracle.thetas entry needs {d} values")
        return self


def _resolve(config: RunConfig, base: Path) -> RunConfig:
    """Relative data and output paths are taken from the config file's directory."""
    data = config.data
    updates = {
        name: base / getattr(data, name)
        for name in ("edges", "attributes")
        if getattr(data, name) is not None and not getattr(data, name).is_absolute()
    }
    output = config.output
    if not output.dir.is_absolute():
        output = output.model_copy(update={"dir": base / output.dir})
    return config.model_copy(update={"data": data.model_copy(update=updates), "output": output})


def parse_config(raw: dict[str, Any], *, base: Path | None = None) -> RunConfig:
    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as exc:
        raise ConfigError(f"Invalid run configuration:\n{exc}") from exc
    return _resolve(config, base) if base is not None else config


def load_config(path: str | Path, **overrides: Any) -> RunConfig:
    """
    Read a TOML run file. Non-None ``overrides`` (``seed``, ``mode``,
    ``out``) replace the file's values, as the CLI flags do; an ``out``
    override is relative to the working directory.
    """
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text())
    except FileNotFoundError as exc:
        raise ConfigError(f"Config file not found: {path}") from exc
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    if overrides.get("seed") is not None:
        raw["seed"] = overrides["seed"]
    if overrides.get("mode") is not None:
        raw["mode"] = overrides["mode"]
    if overrides.get("out") is not None:
        raw.setdefault("output", {})["dir"] = str(Path(overrides["out"]).absolute())
    return parse_config(raw, base=path.parent)
