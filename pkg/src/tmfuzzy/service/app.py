"""FastAPI app around the matching core.

Banks live in process memory under generated ids: create one, then run
match or sweep requests against it.  The batch CLI does not go through
this service; it exists for interactive clients that hold a bank open
across many queries.
"""

from __future__ import annotations

import threading
import uuid

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..corpus import TranslationUnit
from ..errors import TmFuzzyError
from ..evaluation import z_sweep
from ..metrics import WEIGHTED_METRICS, MetricConfig, score_pair
from ..normalize import NORMALIZER_NAMES, generic_normalizer, get_normalizer
from ..retrieval import IDF_SCOPES, TmBank, build_bank, match_all, threshold_filter, top_k
from . import schemas

app = FastAPI(title="tmfuzzy", version=__version__)

_banks: dict[str, TmBank] = {}
_banks_meta: dict[str, schemas.BankInfo] = {}
_lock = threading.Lock()


def _get_bank(bank_id: str) -> TmBank:
    with _lock:
        bank = _banks.get(bank_id)
    if bank is None:
        raise HTTPException(status_code=404, detail=f"no bank {bank_id!r}")
    return bank


def _metric_config(params: schemas.MetricParams) -> MetricConfig:
    try:
        return MetricConfig(
            metric=params.metric,
            ngram_max=params.ngram_max,
            z=params.z,
            ed_denominator=params.ed_denominator,
        )
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


def _normalizer_or_400(name: str):
    try:
        return get_normalizer(name)
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=__version__)


@app.get("/normalizers", response_model=list[schemas.NormalizerInfo])
def list_normalizers() -> list[schemas.NormalizerInfo]:
    infos = []
    for name in NORMALIZER_NAMES:
        normalizer = get_normalizer(name)
        infos.append(
            schemas.NormalizerInfo(name=name, stages=list(normalizer.stages))
        )
    return infos


@app.get("/normalizers/{name}", response_model=schemas.NormalizerInfo)
def show_normalizer(name: str) -> schemas.NormalizerInfo:
    if name not in NORMALIZER_NAMES:
        raise HTTPException(status_code=404, detail=f"no normalizer {name!r}")
    normalizer = get_normalizer(name)
    return schemas.NormalizerInfo(name=name, stages=list(normalizer.stages))


@app.post("/score", response_model=schemas.ScoreResponse)
def score(request: schemas.ScoreRequest) -> schemas.ScoreResponse:
    cfg = _metric_config(request)
    idf = None
    if request.bank_id is not None:
        idf = _get_bank(request.bank_id).idf
    elif cfg.metric in WEIGHTED_METRICS:
        raise HTTPException(
            status_code=400,
            detail=f"metric {cfg.metric!r} needs a bank_id for its IDF table",
        )
    normalizer = _normalizer_or_400(request.normalizer)
    m = normalizer.segment(request.workload_text)
    c = normalizer.segment(request.candidate_text)
    result = score_pair(m, c, cfg, idf)
    breakdown = list(result.breakdown) if result.breakdown is not None else None
    return schemas.ScoreResponse(
        metric=result.metric, score=result.value, breakdown=breakdown
    )


@app.post("/banks", response_model=schemas.BankInfo, status_code=201)
def create_bank(request: schemas.BankCreateRequest) -> schemas.BankInfo:
    normalizer = _normalizer_or_400(request.normalizer)
    targets = request.target_segments
    if targets is None:
        targets = [""] * len(request.source_segments)
    if len(targets) != len(request.source_segments):
        raise HTTPException(
            status_code=400,
            detail=f"{len(request.source_segments)} source segments but "
            f"{len(targets)} target segments",
        )
    if request.idf_scope not in IDF_SCOPES:
        raise HTTPException(
            status_code=400, detail=f"idf_scope must be one of {IDF_SCOPES}"
        )
    target_norm = generic_normalizer()
    units = [
        TranslationUnit(
            index=i, source=normalizer.segment(src), target=target_norm.segment(tgt)
        )
        for i, (src, tgt) in enumerate(zip(request.source_segments, targets))
    ]
    workload = [normalizer.segment(text) for text in request.workload_segments]
    try:
        bank = build_bank(
            units, request.normalizer, idf_scope=request.idf_scope, mtbt=workload
        )
    except (TmFuzzyError, ValueError) as exc:
        # empty banks fail idf construction with ValueError
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    bank_id = uuid.uuid4().hex
    info = schemas.BankInfo(
        bank_id=bank_id,
        size=len(bank),
        normalizer=request.normalizer,
        idf_scope=request.idf_scope,
        idf_tokens=len(bank.idf),
    )
    with _lock:
        _banks[bank_id] = bank
        _banks_meta[bank_id] = info
    return info


@app.get("/banks/{bank_id}", response_model=schemas.BankInfo)
def show_bank(bank_id: str) -> schemas.BankInfo:
    with _lock:
        info = _banks_meta.get(bank_id)
    if info is None:
        raise HTTPException(status_code=404, detail=f"no bank {bank_id!r}")
    return info


@app.delete("/banks/{bank_id}", status_code=204)
def delete_bank(bank_id: str) -> None:
    with _lock:
        if bank_id not in _banks:
            raise HTTPException(status_code=404, detail=f"no bank {bank_id!r}")
        del _banks[bank_id]
        del _banks_meta[bank_id]


@app.post("/banks/{bank_id}/match", response_model=schemas.MatchResponse)
def match(bank_id: str, request: schemas.MatchRequest) -> schemas.MatchResponse:
    bank = _get_bank(bank_id)
    cfg = _metric_config(request)
    normalizer = _normalizer_or_400(bank.normalizer)
    segments = [normalizer.segment(text) for text in request.segments]
    try:
        if request.top_k == 1:
            results = match_all(segments, bank, cfg)
        else:
            results = []
            for i, segment in enumerate(segments):
                results.extend(top_k(segment, bank, cfg, request.top_k, mtbt_index=i))
    except TmFuzzyError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    if request.threshold is not None:
        results = threshold_filter(results, request.threshold)
    by_index = {unit.index: unit for unit in bank.units}
    entries = [
        schemas.MatchEntry(
            mtbt_index=r.mtbt_index,
            tmb_index=r.tmb_index,
            metric=r.metric,
            score=r.score,
            source_text=by_index[r.tmb_index].source.original_text,
            target_text=by_index[r.tmb_index].target.original_text,
        )
        for r in results
    ]
    return schemas.MatchResponse(results=entries)


@app.post("/banks/{bank_id}/zsweep", response_model=schemas.ZSweepResponse)
def sweep(bank_id: str, request: schemas.ZSweepRequest) -> schemas.ZSweepResponse:
    bank = _get_bank(bank_id)
    normalizer = _normalizer_or_400(bank.normalizer)
    segments = [normalizer.segment(text) for text in request.segments]
    try:
        table = z_sweep(
            segments,
            bank,
            request.z_values,
            metric=request.metric,
            ngram_max=request.ngram_max,
            length_on=request.length_on,
        )
    except (TmFuzzyError, ValueError) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    points = [
        schemas.ZSweepPoint(z=z, avg_source_length=length) for z, length in table
    ]
    return schemas.ZSweepResponse(points=points)
