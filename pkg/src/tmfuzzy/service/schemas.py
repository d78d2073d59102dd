"""Request and response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class NormalizerInfo(BaseModel):
    name: str
    stages: list[str]


class MetricParams(BaseModel):
    """Shared metric knobs; defaults mirror the CLI."""

    metric: str = "mwngp"
    ngram_max: int = Field(default=4, ge=1)
    z: float = Field(default=0.75, ge=0.0, le=1.0)
    ed_denominator: str = "tokens"


class ScoreRequest(MetricParams):
    workload_text: str
    candidate_text: str
    normalizer: str = "generic"
    bank_id: str | None = Field(
        default=None,
        description="Bank whose IDF table weights the score; required for "
        "the IDF-weighted metrics",
    )


class ScoreResponse(BaseModel):
    metric: str
    score: float
    breakdown: list[float] | None = None


class BankCreateRequest(BaseModel):
    source_segments: list[str]
    target_segments: list[str] | None = None
    normalizer: str = "generic"
    idf_scope: str = "bank"
    workload_segments: list[str] = Field(
        default_factory=list,
        description="Extra IDF documents, used when idf_scope is bank+mtbt",
    )


class BankInfo(BaseModel):
    bank_id: str
    size: int
    normalizer: str
    idf_scope: str
    idf_tokens: int


class MatchRequest(MetricParams):
    segments: list[str]
    top_k: int = Field(default=1, ge=1)
    threshold: float | None = Field(default=None, ge=0.0, le=1.0)


class MatchEntry(BaseModel):
    mtbt_index: int
    tmb_index: int
    metric: str
    score: float
    source_text: str
    target_text: str


class MatchResponse(BaseModel):
    results: list[MatchEntry]


class ZSweepRequest(BaseModel):
    segments: list[str]
    z_values: list[float]
    metric: str = "mwngp"
    ngram_max: int = Field(default=4, ge=1)
    length_on: str = "match"


class ZSweepPoint(BaseModel):
    z: float
    avg_source_length: float


class ZSweepResponse(BaseModel):
    points: list[ZSweepPoint]
