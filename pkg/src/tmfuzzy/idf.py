"""Inverse document frequency over source-side sentences.

Each source sentence counts as one document.  idf(t) = log(|D| / df(t)),
natural log; tokens never seen in D are clamped to df = 1 (the maximum
idf), so rare and unseen vocabulary weighs the most.  All idf-consuming
metrics are ratios of idf sums, so the log base is observably irrelevant.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Iterable, Mapping

from .errors import FormatError
from .normalize import Segment


class IdfTable:
    """Frozen document-frequency table with idf lookup."""

    def __init__(self, doc_count: int, df: Mapping[str, int]):
        if doc_count < 1:
            raise ValueError("doc_count must be positive")
        for token, count in df.items():
            if not 1 <= count <= doc_count:
                raise ValueError(
                    f"df({token!r}) = {count} outside 1..{doc_count}"
                )
        self.doc_count = doc_count
        self._df = dict(df)

    @classmethod
    def from_segments(cls, segments: Iterable[Segment]) -> "IdfTable":
        """Count, for every unigram, the number of segments containing it."""
        df: dict[str, int] = {}
        count = 0
        for seg in segments:
            count += 1
            for token in set(seg.match_tokens):
                df[token] = df.get(token, 0) + 1
        if count == 0:
            raise ValueError("cannot build an IDF table from zero segments")
        return cls(count, df)

    def df(self, token: str) -> int:
        """Document frequency, clamped to 1 for unseen tokens."""
        return self._df.get(token, 1)

    def idf(self, token: str) -> float:
        return math.log(self.doc_count / self.df(token))

    def __len__(self) -> int:
        return len(self._df)

    def __repr__(self) -> str:
        return f"IdfTable(doc_count={self.doc_count}, tokens={len(self._df)})"

    def to_tsv(self, path: str | Path) -> None:
        """Write ``#doc_count<TAB>N`` then one ``token<TAB>df`` row per token."""
        lines = [f"#doc_count\t{self.doc_count}"]
        lines.extend(f"{token}\t{self._df[token]}" for token in sorted(self._df))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def from_tsv(cls, path: str | Path) -> "IdfTable":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        if not lines or not lines[0].startswith("#doc_count\t"):
            raise FormatError(f"{path}: missing #doc_count header")
        doc_count = int(lines[0].split("\t", 1)[1])
        df: dict[str, int] = {}
        for lineno, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            token, sep, count = line.partition("\t")
            if not sep:
                raise FormatError(f"{path}:{lineno}: expected token<TAB>df")
            df[token] = int(count)
        return cls(doc_count, df)


def build_idf(segments: Iterable[Segment]) -> IdfTable:
    return IdfTable.from_segments(segments)
