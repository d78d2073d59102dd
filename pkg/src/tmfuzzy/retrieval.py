"""Scoring a workload against a TM bank and picking the best candidates.

The reference retrieval is an exhaustive scan of the bank.  Ties on the
exact score value go to the candidate stored first in the bank; no epsilon
is applied, so tie-breaking is platform-independent given deterministic
scoring.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import TranslationUnit
from .errors import EmptyBankError
from .idf import IdfTable
from .metrics import MetricConfig, score_pair
from .normalize import Segment

IDF_SCOPES = ("bank", "bank+mtbt")


@dataclass(frozen=True)
class TmBank:
    """Immutable bank of translation units plus a frozen IDF table."""

    units: tuple[TranslationUnit, ...]
    idf: IdfTable
    normalizer: str

    def __len__(self) -> int:
        return len(self.units)


def build_bank(
    units: Sequence[TranslationUnit],
    normalizer: str,
    idf_scope: str = "bank+mtbt",
    mtbt: Sequence[Segment] = (),
) -> TmBank:
    """Freeze a bank, computing IDF over its source sides.

    With scope ``bank+mtbt`` the workload segments count as documents too,
    i.e. D is every source sentence that entered the experiment.
    """
    if idf_scope not in IDF_SCOPES:
        raise ValueError(f"idf_scope must be one of {IDF_SCOPES}")
    documents = [unit.source for unit in units]
    if idf_scope == "bank+mtbt":
        documents.extend(mtbt)
    return TmBank(
        units=tuple(units),
        idf=IdfTable.from_segments(documents),
        normalizer=normalizer,
    )


@dataclass(frozen=True)
class MatchResult:
    mtbt_index: int
    tmb_index: int
    metric: str
    score: float


def best_match(
    m: Segment, bank: TmBank, cfg: MetricConfig, mtbt_index: int = 0
) -> MatchResult:
    """Exhaustive-scan argmax; first bank index wins exact-score ties."""
    if not bank.units:
        raise EmptyBankError("cannot match against an empty bank")
    best_score = -1.0
    best_index = -1
    for unit in bank.units:
        value = score_pair(m, unit.source, cfg, bank.idf).value
        if value > best_score:
            best_score = value
            best_index = unit.index
    return MatchResult(mtbt_index, best_index, cfg.metric, best_score)


def top_k(
    m: Segment, bank: TmBank, cfg: MetricConfig, k: int, mtbt_index: int = 0
) -> list[MatchResult]:
    """The k best candidates, ordered by score descending then bank index."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not bank.units:
        raise EmptyBankError("cannot match against an empty bank")
    scored = [
        (score_pair(m, unit.source, cfg, bank.idf).value, unit.index)
        for unit in bank.units
    ]
    scored.sort(key=lambda pair: (-pair[0], pair[1]))
    return [
        MatchResult(mtbt_index, index, cfg.metric, value)
        for value, index in scored[:k]
    ]


def match_all(
    mtbt: Sequence[Segment],
    bank: TmBank,
    cfg: MetricConfig,
    workers: int = 1,
) -> list[MatchResult]:
    """Best match for every workload segment, in input order.

    Segments are independent, so they may be scored concurrently; the
    result list is identical for any worker count.
    """
    if not bank.units:
        raise EmptyBankError("cannot match against an empty bank")
    if workers > 1 and len(mtbt) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(
                pool.map(
                    lambda pair: best_match(pair[1], bank, cfg, pair[0]),
                    enumerate(mtbt),
                )
            )
    return [best_match(seg, bank, cfg, i) for i, seg in enumerate(mtbt)]


def threshold_filter(
    results: Iterable[MatchResult], threshold: float
) -> list[MatchResult]:
    """Keep results whose score is at least ``threshold``."""
    return [r for r in results if r.score >= threshold]
