"""Readers and writers for the CSV artifacts the pipeline exchanges.

All files are UTF-8, comma-separated, LF-terminated, with deterministic
row order and fixed numeric formatting (scores 6 decimals, percentages 1,
lengths and MOS 4), so identical runs produce byte-identical artifacts.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Mapping, Sequence

from .corpus import TranslationUnit
from .errors import FormatError
from .evaluation import ScatterRow
from .normalize import Segment
from .retrieval import MatchResult

RESULT_COLUMNS = (
    "mtbt_index",
    "tmb_index",
    "metric",
    "score",
    "mtbt_text",
    "tmb_source_text",
    "tmb_target_text",
)


def _writer(handle):
    return csv.writer(handle, lineterminator="\n")


def write_results(
    path: str | Path,
    results: Sequence[MatchResult],
    mtbt: Sequence[Segment],
    units: Sequence[TranslationUnit],
) -> None:
    """Write retrieval results with the original (un-normalized) texts."""
    by_index = {unit.index: unit for unit in units}
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(RESULT_COLUMNS)
        for r in results:
            unit = by_index[r.tmb_index]
            out.writerow(
                [
                    r.mtbt_index,
                    r.tmb_index,
                    r.metric,
                    f"{r.score:.6f}",
                    mtbt[r.mtbt_index].original_text,
                    unit.source.original_text,
                    unit.target.original_text,
                ]
            )


def read_results(path: str | Path) -> tuple[str, list[MatchResult]]:
    """Read a results CSV; the file must hold exactly one metric."""
    results: list[MatchResult] = []
    metrics: set[str] = set()
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != RESULT_COLUMNS:
            raise FormatError(f"{path}: expected header {','.join(RESULT_COLUMNS)}")
        for rownum, row in enumerate(reader, start=2):
            if len(row) != len(RESULT_COLUMNS):
                raise FormatError(
                    f"{path}:{rownum}: expected {len(RESULT_COLUMNS)} columns"
                )
            try:
                results.append(
                    MatchResult(int(row[0]), int(row[1]), row[2], float(row[3]))
                )
            except ValueError as exc:
                raise FormatError(f"{path}:{rownum}: {exc}") from exc
            metrics.add(row[2])
    if len(metrics) > 1:
        raise FormatError(f"{path}: mixes metrics {sorted(metrics)}")
    metric = metrics.pop() if metrics else ""
    return metric, results


def write_agreement(
    path: str | Path, metrics: Sequence[str], matrix: Sequence[Sequence[float]]
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(["metric", *metrics])
        for metric, row in zip(metrics, matrix):
            out.writerow([metric, *(f"{cell:.1f}" for cell in row)])


def write_found_best(
    path: str | Path, counts: Mapping[str, int], total: int
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(["metric", "count", "total"])
        for metric, count in counts.items():
            out.writerow([metric, count, total])


def write_scatter(path: str | Path, rows: Sequence[ScatterRow]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(["mtbt_index", "metric_score", "mos", "is_best"])
        for row in rows:
            out.writerow(
                [
                    row.mtbt_index,
                    f"{row.metric_score:.6f}",
                    f"{row.mos:.4f}",
                    "true" if row.is_best else "false",
                ]
            )


def write_zsweep(path: str | Path, table: Sequence[tuple[float, float]]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        out = _writer(handle)
        out.writerow(["z", "avg_source_length"])
        for z, avg_length in table:
            out.writerow([f"{z:g}", f"{avg_length:.4f}"])
