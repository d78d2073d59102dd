"""The six TM similarity metrics.

Every metric scores a (workload segment M, candidate source segment C)
pair in [0, 1], higher meaning a better match:

* ``pm``:    percent match: share of M's distinct unigrams found in C.
* ``wpm``:   idf-weighted percent match.
* ``ed``:    word-level Levenshtein similarity, floored at 0.
* ``ngp``:   arithmetic mean over orders 1..N of n-gram precision, with
  the denominator a Z-weighted blend of |M n-grams| and |C n-grams|.
* ``wngp``:  same, with every n-gram weighted by the sum of its unigrams'
  idf values.
* ``mwngp``: wngp with order weights halving per order, so unigram
  matches dominate and long n-grams refine.

Z trades precision against recall of the retrieved candidate: Z=1 ignores
candidate length (longer matches win), Z=0 penalizes it (shorter, more
precise matches win).

Conventions, applied uniformly: n-gram collections are *sets* of distinct
n-grams; any precision whose denominator is 0 scores 0; a workload segment
with no match tokens scores 0.  Weighted sums iterate n-grams in sorted
order so results do not depend on hash randomization; this is what makes
retrieval (and its tie-breaking) bit-reproducible across processes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol, Sequence

from .normalize import Segment

METRIC_NAMES = ("pm", "wpm", "ed", "ngp", "wngp", "mwngp")
WEIGHTED_METRICS = frozenset({"wpm", "wngp", "mwngp"})

DEFAULT_NGRAM_MAX = 4
DEFAULT_Z = 0.75


class IdfLookup(Protocol):
    def idf(self, token: str) -> float: ...


@dataclass(frozen=True)
class MetricConfig:
    metric: str = "mwngp"
    ngram_max: int = DEFAULT_NGRAM_MAX
    z: float = DEFAULT_Z
    ed_denominator: str = "tokens"  # "tokens" (multiset length) or "distinct"

    def __post_init__(self) -> None:
        if self.metric not in METRIC_NAMES:
            raise ValueError(f"unknown metric {self.metric!r}; expected one of {METRIC_NAMES}")
        if self.ngram_max < 1:
            raise ValueError("ngram_max must be >= 1")
        if not 0.0 <= self.z <= 1.0:
            raise ValueError(f"z must be in [0, 1], got {self.z}")
        if self.ed_denominator not in ("tokens", "distinct"):
            raise ValueError("ed_denominator must be 'tokens' or 'distinct'")


@dataclass(frozen=True)
class Score:
    value: float
    metric: str
    breakdown: tuple[float, ...] | None = None  # per-order precisions, 1..N


def pm(m: Segment, c: Segment) -> float:
    m_set = m.ngrams(1)
    if not m_set:
        return 0.0
    return len(m_set & c.ngrams(1)) / len(m_set)


def wpm(m: Segment, c: Segment, idf: IdfLookup) -> float:
    m_set = m.ngrams(1)
    denominator = sum(idf.idf(u) for (u,) in sorted(m_set))
    if denominator <= 0.0:
        return 0.0
    numerator = sum(idf.idf(u) for (u,) in sorted(m_set & c.ngrams(1)))
    return numerator / denominator


def word_edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    """Unit-cost Levenshtein distance over token sequences."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, tok_a in enumerate(a, start=1):
        current = [i]
        for j, tok_b in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,  # delete
                    current[j - 1] + 1,  # insert
                    previous[j - 1] + (tok_a != tok_b),  # substitute
                )
            )
        previous = current
    return previous[-1]


def edit_distance_score(m: Segment, c: Segment, denominator: str = "tokens") -> float:
    """max(1 - dist/|M|, 0) with |M| the match-token count by default.

    ``denominator="distinct"`` divides by the distinct-unigram count
    instead.
    """
    length = len(m.match_tokens) if denominator == "tokens" else len(m.ngrams(1))
    if length == 0:
        return 0.0
    distance = word_edit_distance(m.match_tokens, c.match_tokens)
    return max(1.0 - distance / length, 0.0)


def _weight_sum(ngrams, idf: IdfLookup) -> float:
    # Each n-gram weighs the sum of its unigrams' idf values.  Sorted
    # iteration keeps float accumulation order fixed.
    return sum(idf.idf(u) for gram in sorted(ngrams) for u in gram)


def ngram_precision(
    m: Segment, c: Segment, n: int, z: float, idf: IdfLookup | None = None
) -> float:
    """Order-n precision; idf-weighted when an idf lookup is given."""
    m_set = m.ngrams(n)
    c_set = c.ngrams(n)
    if idf is None:
        numerator: float = len(m_set & c_set)
        m_total: float = len(m_set)
        c_total: float = len(c_set)
    else:
        numerator = _weight_sum(m_set & c_set, idf)
        m_total = _weight_sum(m_set, idf)
        c_total = _weight_sum(c_set, idf)
    # Algebraically z*m_total + (1-z)*c_total; this form makes a self-match
    # divide a sum by itself exactly.
    denominator = c_total + z * (m_total - c_total)
    if denominator <= 0.0:
        return 0.0
    return numerator / denominator


def _order_precisions(
    m: Segment, c: Segment, cfg: MetricConfig, idf: IdfLookup | None
) -> tuple[float, ...]:
    return tuple(
        ngram_precision(m, c, n, cfg.z, idf) for n in range(1, cfg.ngram_max + 1)
    )


def ngp(m: Segment, c: Segment, cfg: MetricConfig) -> float:
    return sum(_order_precisions(m, c, cfg, None)) / cfg.ngram_max


def wngp(m: Segment, c: Segment, cfg: MetricConfig, idf: IdfLookup) -> float:
    return sum(_order_precisions(m, c, cfg, idf)) / cfg.ngram_max


def mwngp(m: Segment, c: Segment, cfg: MetricConfig, idf: IdfLookup) -> float:
    # (2^N / (2^N - 1)) * sum_n wp_n / 2^n, computed with power-of-two
    # integer weights so equal per-order precisions pass through exactly.
    precisions = _order_precisions(m, c, cfg, idf)
    n_max = cfg.ngram_max
    weighted = sum(
        wp * (1 << (n_max - n)) for n, wp in enumerate(precisions, start=1)
    )
    return weighted / ((1 << n_max) - 1)


def score_pair(
    m: Segment, c: Segment, cfg: MetricConfig, idf: IdfLookup | None = None
) -> Score:
    """Score one pair with the configured metric, keeping the per-order
    breakdown for the n-gram family."""
    metric = cfg.metric
    if metric in WEIGHTED_METRICS and idf is None:
        raise ValueError(f"metric {metric!r} requires an IDF table")
    if metric == "pm":
        return Score(pm(m, c), metric)
    if metric == "wpm":
        assert idf is not None
        return Score(wpm(m, c, idf), metric)
    if metric == "ed":
        return Score(edit_distance_score(m, c, cfg.ed_denominator), metric)
    if metric == "ngp":
        breakdown = _order_precisions(m, c, cfg, None)
        return Score(sum(breakdown) / cfg.ngram_max, metric, breakdown)
    assert idf is not None
    breakdown = _order_precisions(m, c, cfg, idf)
    if metric == "wngp":
        return Score(sum(breakdown) / cfg.ngram_max, metric, breakdown)
    n_max = cfg.ngram_max
    weighted = sum(wp * (1 << (n_max - n)) for n, wp in enumerate(breakdown, start=1))
    return Score(weighted / ((1 << n_max) - 1), metric, breakdown)
