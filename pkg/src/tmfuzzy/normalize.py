"""Normalization pipelines that turn raw text into match tokens.

Every metric operates on a segment's *match tokens*: the token sequence a
:class:`Normalizer` derives from the original text.  The original text is
never altered; it is what gets displayed when a match is retrieved.

Three pipelines ship with the package:

* ``french``: NFC, whitespace split, lowercase, drop tokens without any
  alphabetic character (punctuation/numbers/symbols), French suffix stem.
* ``chinese``: NFC, whitespace split (input must be pre-tokenized), keep
  only tokens containing at least one code point in the configured CJK
  ranges.
* ``generic``: NFC, whitespace split, casefold.  Language-neutral default.
"""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import stemmer

# Inclusive code-point ranges a token must intersect to count as Chinese.
# The middle range straddles unusual block boundaries on purpose; treat it
# as configuration, not as a statement about Unicode blocks.
CHINESE_RANGES: tuple[tuple[int, int], ...] = (
    (0x4E00, 0x9FFF),
    (0x4000, 0x4DFF),
    (0xF900, 0xFAFF),
)

TokenFilter = Callable[[list[str]], list[str]]


@dataclass(eq=False)
class Segment:
    """A sentence with its original text and derived match tokens.

    N-gram sets are built lazily per order and cached, because the same
    segment is scored against many candidates.
    """

    original_text: str
    match_tokens: tuple[str, ...]
    _ngram_cache: dict[int, frozenset[tuple[str, ...]]] = field(
        default_factory=dict, repr=False
    )

    def ngrams(self, n: int) -> frozenset[tuple[str, ...]]:
        """Set of distinct n-grams (contiguous token windows) of order n."""
        if n < 1:
            raise ValueError(f"n-gram order must be >= 1, got {n}")
        cached = self._ngram_cache.get(n)
        if cached is None:
            toks = self.match_tokens
            cached = frozenset(
                tuple(toks[i : i + n]) for i in range(len(toks) - n + 1)
            )
            self._ngram_cache[n] = cached
        return cached

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Segment):
            return NotImplemented
        return (
            self.original_text == other.original_text
            and self.match_tokens == other.match_tokens
        )

    def __hash__(self) -> int:
        return hash((self.original_text, self.match_tokens))


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def _has_alpha(token: str) -> bool:
    return any(ch.isalpha() for ch in token)


def _make_cjk_filter(ranges: Sequence[tuple[int, int]]) -> TokenFilter:
    def keep_cjk(tokens: list[str]) -> list[str]:
        return [
            t
            for t in tokens
            if any(lo <= ord(ch) <= hi for ch in t for lo, hi in ranges)
        ]

    return keep_cjk


class Normalizer:
    """A named, deterministic token pipeline.

    ``pretokens`` is the tokenization stage alone (NFC + whitespace split);
    segment-validity filters count these.  ``tokens`` runs the full stage
    list and produces the match tokens.
    """

    def __init__(self, name: str, stages: Sequence[tuple[str, TokenFilter]]):
        self.name = name
        self._stages = tuple(stages)

    @property
    def stages(self) -> tuple[str, ...]:
        """Stage identifiers, in application order (for audit output)."""
        return ("nfc", "whitespace-split") + tuple(name for name, _ in self._stages)

    def pretokens(self, text: str) -> list[str]:
        return _nfc(text).split()

    def tokens(self, text: str) -> list[str]:
        toks = self.pretokens(text)
        for _, stage in self._stages:
            toks = stage(toks)
        return toks

    def segment(self, text: str) -> Segment:
        return Segment(original_text=text, match_tokens=tuple(self.tokens(text)))

    def __repr__(self) -> str:
        return f"Normalizer({self.name!r})"


def french_normalizer(stem: Callable[[str], str] = stemmer.stem) -> Normalizer:
    return Normalizer(
        "french",
        [
            ("lowercase", lambda ts: [t.lower() for t in ts]),
            ("drop-non-alphabetic", lambda ts: [t for t in ts if _has_alpha(t)]),
            ("stem-french", lambda ts: [stem(t) for t in ts]),
        ],
    )


def chinese_normalizer(
    ranges: Sequence[tuple[int, int]] = CHINESE_RANGES,
) -> Normalizer:
    return Normalizer("chinese", [("keep-cjk-tokens", _make_cjk_filter(ranges))])


def generic_normalizer() -> Normalizer:
    return Normalizer("generic", [("casefold", lambda ts: [t.casefold() for t in ts])])


NORMALIZER_NAMES = ("french", "chinese", "generic")

_FACTORIES = {
    "french": french_normalizer,
    "chinese": chinese_normalizer,
    "generic": generic_normalizer,
}


def get_normalizer(name: str) -> Normalizer:
    """Look up a built-in pipeline by name."""
    try:
        return _FACTORIES[name]()
    except KeyError:
        raise ValueError(
            f"unknown normalizer {name!r}; expected one of {NORMALIZER_NAMES}"
        ) from None


def normalize_french(text: str) -> list[str]:
    return french_normalizer().tokens(text)


def normalize_chinese(text: str) -> list[str]:
    return chinese_normalizer().tokens(text)


def normalize_generic(text: str) -> list[str]:
    return generic_normalizer().tokens(text)
