"""Evaluation computations over retrieval results and human judgments.

Human raters score each retrieved (workload, bank) pair on a 1..5
helpfulness scale; per-pair ratings average into a mean opinion score
(MOS).  On top of that this module computes: pairwise metric-agreement
percentages, per-metric found-best counts (a metric scores when its
retrieved segment has the maximal MOS among all metrics, ties crediting
everyone), scatter rows for plotting score against MOS, and the Z sweep of
average retrieved segment length.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import AlignmentError, CoverageError, FormatError, JudgmentValidationError
from .metrics import METRIC_NAMES, MetricConfig
from .normalize import Segment
from .retrieval import MatchResult, TmBank, match_all

JUDGMENT_COLUMNS = ("mtbt_index", "tmb_index", "rating", "rater_id")


@dataclass(frozen=True)
class JudgmentRecord:
    mtbt_index: int
    tmb_index: int
    rating: int
    rater_id: str


@dataclass(frozen=True)
class MosEntry:
    mtbt_index: int
    tmb_index: int
    mos: float
    rating_count: int


def read_judgments(path: str | Path) -> list[JudgmentRecord]:
    """Parse a judgments CSV (header mtbt_index,tmb_index,rating,rater_id)."""
    records: list[JudgmentRecord] = []
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != JUDGMENT_COLUMNS:
            raise FormatError(
                f"{path}: expected header {','.join(JUDGMENT_COLUMNS)}"
            )
        for rownum, row in enumerate(reader, start=2):
            if len(row) != 4:
                raise FormatError(f"{path}:{rownum}: expected 4 columns")
            try:
                mtbt_index = int(row[0])
                tmb_index = int(row[1])
                rating = int(row[2])
            except ValueError as exc:
                raise JudgmentValidationError(f"{path}:{rownum}: {exc}") from exc
            if rating not in (1, 2, 3, 4, 5):
                raise JudgmentValidationError(
                    f"{path}:{rownum}: rating {rating} outside 1..5"
                )
            records.append(JudgmentRecord(mtbt_index, tmb_index, rating, row[3]))
    return records


def aggregate_mos(judgments: Iterable[JudgmentRecord]) -> list[MosEntry]:
    """Average ratings per (workload, bank) pair, sorted by pair."""
    ratings: dict[tuple[int, int], list[int]] = {}
    for record in judgments:
        if record.rating not in (1, 2, 3, 4, 5):
            raise JudgmentValidationError(
                f"rating {record.rating} outside 1..5 for pair "
                f"({record.mtbt_index}, {record.tmb_index})"
            )
        ratings.setdefault((record.mtbt_index, record.tmb_index), []).append(
            record.rating
        )
    return [
        MosEntry(mtbt, tmb, sum(values) / len(values), len(values))
        for (mtbt, tmb), values in sorted(ratings.items())
    ]


def mos_lookup(entries: Iterable[MosEntry]) -> dict[tuple[int, int], float]:
    return {(e.mtbt_index, e.tmb_index): e.mos for e in entries}


def round_half_up(value: float, digits: int = 1) -> float:
    """Decimal half-up rounding (what the report tables use)."""
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))


def _choice_maps(
    results_by_metric: Mapping[str, Sequence[MatchResult]],
) -> tuple[list[str], dict[str, dict[int, int]]]:
    """Validate coverage and map each metric to {mtbt_index: tmb_index}."""
    metrics = [m for m in METRIC_NAMES if m in results_by_metric]
    metrics += [m for m in results_by_metric if m not in METRIC_NAMES]
    if not metrics:
        raise ValueError("no results given")
    choices: dict[str, dict[int, int]] = {}
    for metric in metrics:
        per_metric: dict[int, int] = {}
        for result in results_by_metric[metric]:
            if result.mtbt_index in per_metric:
                raise AlignmentError(
                    f"metric {metric}: multiple results for MTBT "
                    f"index {result.mtbt_index}"
                )
            per_metric[result.mtbt_index] = result.tmb_index
        choices[metric] = per_metric
    index_set = set(choices[metrics[0]])
    for metric in metrics[1:]:
        if set(choices[metric]) != index_set:
            raise AlignmentError(
                f"metric {metric} covers different MTBT indices than "
                f"{metrics[0]}"
            )
    if not index_set:
        raise ValueError("results cover no MTBT segments")
    return metrics, choices


def agreement_matrix(
    results_by_metric: Mapping[str, Sequence[MatchResult]],
) -> tuple[list[str], list[list[float]]]:
    """Percent of workload segments on which each metric pair retrieved the
    same bank segment.  Symmetric, 100.0 diagonal, one decimal place."""
    metrics, choices = _choice_maps(results_by_metric)
    indices = sorted(choices[metrics[0]])
    total = len(indices)
    matrix: list[list[float]] = []
    for a in metrics:
        row = []
        for b in metrics:
            agree = sum(1 for i in indices if choices[a][i] == choices[b][i])
            row.append(round_half_up(100.0 * agree / total, 1))
        matrix.append(row)
    return metrics, matrix


def _mos_for_choices(
    metrics: list[str],
    choices: dict[str, dict[int, int]],
    mos: Mapping[tuple[int, int], float],
) -> dict[str, dict[int, float]]:
    missing = sorted(
        {
            (i, choices[metric][i])
            for metric in metrics
            for i in choices[metric]
            if (i, choices[metric][i]) not in mos
        }
    )
    if missing:
        raise CoverageError(
            "no MOS entry for retrieved pair(s): "
            + ", ".join(f"({m}, {t})" for m, t in missing)
        )
    return {
        metric: {i: mos[(i, choices[metric][i])] for i in choices[metric]}
        for metric in metrics
    }


def found_best_counts(
    results_by_metric: Mapping[str, Sequence[MatchResult]],
    mos_entries: Iterable[MosEntry],
) -> dict[str, int]:
    """How often each metric retrieved a segment of maximal MOS (ties count
    for every tying metric)."""
    metrics, choices = _choice_maps(results_by_metric)
    mos = mos_lookup(mos_entries)
    per_metric_mos = _mos_for_choices(metrics, choices, mos)
    counts = {metric: 0 for metric in metrics}
    for i in sorted(choices[metrics[0]]):
        best = max(per_metric_mos[metric][i] for metric in metrics)
        for metric in metrics:
            if per_metric_mos[metric][i] == best:
                counts[metric] += 1
    return counts


def best_flags(
    results_by_metric: Mapping[str, Sequence[MatchResult]],
    mos_entries: Iterable[MosEntry],
) -> dict[str, dict[int, bool]]:
    """Per metric and workload index: did no other metric retrieve a
    higher-MOS segment?  (The dark-diamond flag of the scatter data.)"""
    metrics, choices = _choice_maps(results_by_metric)
    mos = mos_lookup(mos_entries)
    per_metric_mos = _mos_for_choices(metrics, choices, mos)
    flags: dict[str, dict[int, bool]] = {metric: {} for metric in metrics}
    for i in sorted(choices[metrics[0]]):
        best = max(per_metric_mos[metric][i] for metric in metrics)
        for metric in metrics:
            flags[metric][i] = per_metric_mos[metric][i] == best
    return flags


@dataclass(frozen=True)
class ScatterRow:
    mtbt_index: int
    metric_score: float
    mos: float
    is_best: bool


def scatter_rows(
    results: Sequence[MatchResult],
    mos_entries: Iterable[MosEntry],
    flags: Mapping[int, bool],
) -> list[ScatterRow]:
    """Plot-ready rows for one metric's results, sorted by workload index."""
    mos = mos_lookup(mos_entries)
    rows = []
    for result in sorted(results, key=lambda r: r.mtbt_index):
        pair = (result.mtbt_index, result.tmb_index)
        if pair not in mos:
            raise CoverageError(f"no MOS entry for retrieved pair {pair}")
        rows.append(
            ScatterRow(
                result.mtbt_index,
                result.score,
                mos[pair],
                flags[result.mtbt_index],
            )
        )
    return rows


def z_sweep(
    mtbt: Sequence[Segment],
    bank: TmBank,
    z_values: Sequence[float],
    metric: str = "mwngp",
    ngram_max: int = 4,
    length_on: str = "match",
    workers: int = 1,
) -> list[tuple[float, float]]:
    """Average source-side token length of the retrieved segments, per Z.

    ``length_on="match"`` counts match tokens (the in-pipeline measure);
    ``"original"`` counts whitespace tokens of the original text.
    """
    if length_on not in ("match", "original"):
        raise ValueError("length_on must be 'match' or 'original'")
    by_index = {unit.index: unit for unit in bank.units}
    table: list[tuple[float, float]] = []
    for z in z_values:
        cfg = MetricConfig(metric=metric, ngram_max=ngram_max, z=z)
        results = match_all(mtbt, bank, cfg, workers=workers)
        lengths = []
        for result in results:
            source = by_index[result.tmb_index].source
            if length_on == "match":
                lengths.append(len(source.match_tokens))
            else:
                lengths.append(len(source.original_text.split()))
        table.append((z, sum(lengths) / len(lengths)))
    return table
