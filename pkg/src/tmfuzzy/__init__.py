"""Fuzzy matching for translation memories.

Scores workload segments against a bank of translation units with six
related similarity metrics (unigram overlap, IDF-weighted overlap, edit
distance, and an n-gram precision family with a length-bias knob), and
ships the retrieval plus evaluation pipeline built on top of them.
"""

from .corpus import (
    MAX_TOKENS,
    MIN_TOKENS,
    RawCorpus,
    SampleSpec,
    TranslationUnit,
    filter_valid,
    load_parallel,
    load_tsv,
    sample_mtbt_tmb,
)
from .errors import (
    AlignmentError,
    CapacityError,
    CoverageError,
    EmptyBankError,
    EncodingError,
    FormatError,
    JudgmentValidationError,
    TmFuzzyError,
)
from .idf import IdfTable, build_idf
from .metrics import (
    METRIC_NAMES,
    MetricConfig,
    Score,
    edit_distance_score,
    mwngp,
    ngp,
    pm,
    score_pair,
    wngp,
    word_edit_distance,
    wpm,
)
from .normalize import (
    CHINESE_RANGES,
    NORMALIZER_NAMES,
    Normalizer,
    Segment,
    chinese_normalizer,
    french_normalizer,
    generic_normalizer,
    get_normalizer,
)
from .retrieval import (
    IDF_SCOPES,
    MatchResult,
    TmBank,
    best_match,
    build_bank,
    match_all,
    threshold_filter,
    top_k,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentError",
    "CHINESE_RANGES",
    "CapacityError",
    "CoverageError",
    "EmptyBankError",
    "EncodingError",
    "FormatError",
    "IDF_SCOPES",
    "IdfTable",
    "JudgmentValidationError",
    "MAX_TOKENS",
    "METRIC_NAMES",
    "MIN_TOKENS",
    "MatchResult",
    "MetricConfig",
    "NORMALIZER_NAMES",
    "Normalizer",
    "RawCorpus",
    "SampleSpec",
    "Score",
    "Segment",
    "TmBank",
    "TmFuzzyError",
    "TranslationUnit",
    "best_match",
    "build_bank",
    "build_idf",
    "chinese_normalizer",
    "edit_distance_score",
    "filter_valid",
    "french_normalizer",
    "generic_normalizer",
    "get_normalizer",
    "load_parallel",
    "load_tsv",
    "match_all",
    "mwngp",
    "ngp",
    "pm",
    "sample_mtbt_tmb",
    "score_pair",
    "threshold_filter",
    "top_k",
    "wngp",
    "word_edit_distance",
    "wpm",
]
