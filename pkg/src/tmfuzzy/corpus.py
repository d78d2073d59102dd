"""Parallel corpus loading, segment-validity filtering, and sampling.

The experiment pipeline starts here: load an aligned corpus, keep segments
whose source side has 5..100 tokens, then draw two disjoint random samples,
the workload (MTBT) and the TM bank (TMB).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from pathlib import Path

from .errors import AlignmentError, CapacityError, EncodingError, FormatError
from .normalize import Normalizer, Segment, generic_normalizer

MIN_TOKENS = 5
MAX_TOKENS = 100


@dataclass(frozen=True)
class RawCorpus:
    """Sentence-aligned corpus: line i on each side is one translation unit."""

    source_lines: tuple[str, ...]
    target_lines: tuple[str, ...]
    language_pair: str = ""

    def __post_init__(self) -> None:
        if len(self.source_lines) != len(self.target_lines):
            raise AlignmentError(
                f"source has {len(self.source_lines)} lines, "
                f"target has {len(self.target_lines)}"
            )

    def __len__(self) -> int:
        return len(self.source_lines)


@dataclass(frozen=True)
class TranslationUnit:
    """An aligned (source, target) segment pair with its bank ordinal."""

    index: int
    source: Segment
    target: Segment


@dataclass(frozen=True)
class SampleSpec:
    mtbt_size: int
    tmb_size: int
    seed: int

    def __post_init__(self) -> None:
        if self.mtbt_size < 1 or self.tmb_size < 1:
            raise ValueError("sample sizes must be positive")


def _read_lines(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise EncodingError(f"{path}: not valid UTF-8 ({exc})") from exc
    return text.splitlines()


def load_parallel(
    source_path: str | Path, target_path: str | Path, language_pair: str = ""
) -> RawCorpus:
    """Load two aligned one-segment-per-line files (UTF-8, LF or CRLF)."""
    source_lines = _read_lines(source_path)
    target_lines = _read_lines(target_path)
    if len(source_lines) != len(target_lines):
        raise AlignmentError(
            f"line count mismatch: {source_path} has {len(source_lines)}, "
            f"{target_path} has {len(target_lines)}"
        )
    return RawCorpus(tuple(source_lines), tuple(target_lines), language_pair)


def load_tsv(path: str | Path, language_pair: str = "") -> RawCorpus:
    """Load a corpus from a single TSV file with columns source<TAB>target."""
    source_lines = []
    target_lines = []
    for lineno, line in enumerate(_read_lines(path), start=1):
        if "\t" not in line:
            raise FormatError(f"{path}:{lineno}: expected source<TAB>target")
        src, _, tgt = line.partition("\t")
        source_lines.append(src)
        target_lines.append(tgt)
    return RawCorpus(tuple(source_lines), tuple(target_lines), language_pair)


def filter_valid(corpus: RawCorpus, normalizer: Normalizer) -> list[TranslationUnit]:
    """Keep units whose source side has MIN_TOKENS..MAX_TOKENS tokens.

    Token counts come from the tokenization stage alone (``pretokens``),
    before any normalization-stage removals.  Target-side counts never
    affect validity.  Surviving units are reindexed densely in corpus order.
    """
    target_norm = generic_normalizer()
    units: list[TranslationUnit] = []
    for src, tgt in zip(corpus.source_lines, corpus.target_lines):
        count = len(normalizer.pretokens(src))
        if MIN_TOKENS <= count <= MAX_TOKENS:
            units.append(
                TranslationUnit(
                    index=len(units),
                    source=normalizer.segment(src),
                    target=target_norm.segment(tgt),
                )
            )
    return units


def _draw_indices(rng: random.Random, population: int, k: int) -> list[int]:
    # Partial Fisher-Yates driven only by rng.random(), which is the one
    # primitive the random module guarantees reproducible across versions.
    indices = list(range(population))
    for i in range(k):
        j = i + int(rng.random() * (population - i))
        indices[i], indices[j] = indices[j], indices[i]
    return indices[:k]


def sample_mtbt_tmb(
    units: list[TranslationUnit], spec: SampleSpec
) -> tuple[list[Segment], list[TranslationUnit]]:
    """Draw disjoint MTBT and TMB samples, uniformly without replacement.

    Fully determined by ``spec.seed`` (Mersenne Twister).  Both samples are
    returned in original corpus order, and TMB units are reindexed densely
    so first-in-bank tie-breaking is stable.
    """
    total = spec.mtbt_size + spec.tmb_size
    if total > len(units):
        raise CapacityError(
            f"requested {spec.mtbt_size} MTBT + {spec.tmb_size} TMB segments "
            f"but only {len(units)} valid units are available"
        )
    rng = random.Random(spec.seed)
    drawn = _draw_indices(rng, len(units), total)
    mtbt_idx = sorted(drawn[: spec.mtbt_size])
    tmb_idx = sorted(drawn[spec.mtbt_size :])
    mtbt = [units[i].source for i in mtbt_idx]
    tmb = [replace(units[i], index=new) for new, i in enumerate(tmb_idx)]
    return mtbt, tmb
