from pydantic import BaseModel, Field


class GraphRequest(BaseModel):
    """
    API-level description of an observed network and a model.

    Notes:
    - Node indices are 0-based
    - ``attributes`` maps an attribute name to one level per node
    - ``terms`` uses the run-config notation, e.g. "gwesp{decay=1.0}"
    """

    # =========================
    # Network
    # =========================
    # Example:
    #   n=4, edges=[[0, 1], [1, 2], [0, 2], [2, 3]]
    #   attributes={"grade": ["7", "7", "8", "9"]}
    n: int = Field(ge=2, le=2000)
    edges: list[tuple[int, int]] = Field(default_factory=list)
    attributes: dict[str, list[str]] | None = None

    # =========================
    # Model
    # =========================
    terms: list[str] = Field(default_factory=lambda: ["edges"], min_length=1)


class MpleRequest(GraphRequest):
    with_prior: bool = False
    prior_variance: float = Field(default=30.0, gt=0)


class PseudoPosteriorRequest(GraphRequest):
    # Demo-sized chains only
    iterations: int = Field(default=5_000, ge=1, le=50_000)
    burn_in: int = Field(default=1_000, ge=0, le=50_000)
    tuning: float = Field(default=1.0, gt=0)
    prior_variance: float = Field(default=30.0, gt=0)
    seed: int = 0


class SummarizeRequest(BaseModel):
    draws: list[list[float]] = Field(min_length=10)
    labels: list[str] | None = None
