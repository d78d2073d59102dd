"""Deterministic French suffix stemmer.

A snowball-style suffix stripper: suffixes are removed (or rewritten) by
longest-match-first table lookup, guarded by the classic R1/R2/RV word
regions, and the whole step is iterated to a fixpoint.  The fixpoint
iteration makes the stemmer idempotent by construction: stemming an
already-stemmed token is always a no-op, which the normalization pipeline
relies on.

This is intentionally a self-contained, versionless stemmer.  It conflates
the common French inflection families (plurals, verb conjugations, the
productive noun/adjective suffixes) without attempting parity with any
particular external stemmer release.  Swap in your own callable via
``Normalizer`` construction if you need a specific one.
"""

VOWELS = frozenset("aeiouyâàëéêèïîôûù")

# Noun/adjective suffixes: (suffix, minimum region, replacement).
# Region "r2" is the most interior region, "r1" wider, "rv" widest.
_STANDARD_SUFFIXES = [
    ("issements", "r1", ""),
    ("issement", "r1", ""),
    ("atrices", "r2", ""),
    ("atrice", "r2", ""),
    ("ateurs", "r2", ""),
    ("ateur", "r2", ""),
    ("ations", "r2", ""),
    ("ation", "r2", ""),
    ("logies", "r2", "log"),
    ("logie", "r2", "log"),
    ("usions", "r2", "u"),
    ("usion", "r2", "u"),
    ("utions", "r2", "u"),
    ("ution", "r2", "u"),
    ("ements", "rv", ""),
    ("ement", "rv", ""),
    ("ences", "r2", ""),
    ("ence", "r2", ""),
    ("ités", "r2", ""),
    ("ité", "r2", ""),
    ("ives", "r2", ""),
    ("ive", "r2", ""),
    ("ifs", "r2", ""),
    ("if", "r2", ""),
    ("euses", "r2", ""),
    ("euse", "r2", ""),
    ("ances", "r2", ""),
    ("ance", "r2", ""),
    ("iques", "r2", ""),
    ("ique", "r2", ""),
    ("ismes", "r2", ""),
    ("isme", "r2", ""),
    ("ables", "r2", ""),
    ("able", "r2", ""),
    ("istes", "r2", ""),
    ("iste", "r2", ""),
    ("eaux", "r1", "eau"),
    ("aux", "r1", "al"),
    ("eux", "r1", ""),
    ("ments", "rv", ""),
    ("ment", "rv", ""),
]
_STANDARD_SUFFIXES.sort(key=lambda e: -len(e[0]))

# Verb endings of the -er family plus shared imperfect/participle endings.
# Deleted when the suffix lies entirely inside RV.
_VERB_SUFFIXES = sorted(
    [
        "eraient", "erions", "assions", "assiez", "assent", "eriez",
        "erons", "eront", "erais", "erait", "èrent", "aient", "asses",
        "antes", "erai", "eras", "erez", "asse", "ante", "ants", "ées",
        "ait", "ais", "ant", "era", "iez", "ée", "és", "er", "ez", "é",
    ],
    key=len,
    reverse=True,
)

# Verb endings of the -ir family.  Deleted when the suffix lies inside RV
# and is preceded by a non-vowel that is itself inside RV (so e.g. "fini"
# stems but "oui" survives).
_VERB_I_SUFFIXES = sorted(
    [
        "issaient", "issantes", "issions", "issante", "issants",
        "issant", "issent", "issais", "issait", "issiez", "issons",
        "iraient", "irions", "issez", "isses", "irais", "irait",
        "irent", "iriez", "irons", "iront", "isse", "irai", "iras",
        "irez", "ies", "ira", "ie", "ir", "is", "it", "i",
    ],
    key=len,
    reverse=True,
)

# Final -s deletion is blocked after these characters (keeps "pas", "virus",
# "stress" intact while still stripping ordinary plurals).
_S_BLOCKERS = frozenset("aiouès")


def _region_after_vowel_consonant(word: str, start: int) -> int:
    """Index just past the first non-vowel that follows a vowel, scanning
    pairs whose vowel sits at ``start`` or later."""
    for i in range(start + 1, len(word)):
        if word[i - 1] in VOWELS and word[i] not in VOWELS:
            return i + 1
    return len(word)


def _regions(word: str) -> tuple[int, int, int]:
    """Start offsets of the RV, R1 and R2 suffix regions."""
    rv = len(word)
    if len(word) >= 3 and (
        (word[0] in VOWELS and word[1] in VOWELS) or word[:3] in ("par", "col", "tap")
    ):
        rv = 3
    else:
        for i in range(1, len(word)):
            if word[i] in VOWELS:
                rv = i + 1
                break
    r1 = _region_after_vowel_consonant(word, 0)
    r2 = _region_after_vowel_consonant(word, r1)
    return rv, r1, r2


def _acceptable_stem(stem: str) -> bool:
    # Refuse to strip down to stubs or to tokens with no letters left
    # (e.g. "12er" must not become "12").
    return len(stem) >= 2 and any(ch.isalpha() for ch in stem)


def _strip_once(word: str) -> str:
    """Apply the highest-priority applicable rule, or return word unchanged."""
    if len(word) <= 2:
        return word
    rv, r1, r2 = _regions(word)
    bounds = {"rv": rv, "r1": r1, "r2": r2}

    for suffix, region, repl in _STANDARD_SUFFIXES:
        start = len(word) - len(suffix)
        if start >= bounds[region] and word.endswith(suffix):
            stem = word[:start] + repl
            if _acceptable_stem(stem):
                return stem

    for suffix in _VERB_SUFFIXES:
        start = len(word) - len(suffix)
        if start >= rv and word.endswith(suffix):
            stem = word[:start]
            if _acceptable_stem(stem):
                return stem

    for suffix in _VERB_I_SUFFIXES:
        start = len(word) - len(suffix)
        if (
            start - 1 >= rv
            and word.endswith(suffix)
            and word[start - 1] not in VOWELS
        ):
            stem = word[:start]
            if _acceptable_stem(stem):
                return stem

    # Residual endings.
    if word.endswith("ion") and len(word) - 3 >= r2 and word[-4] in "st":
        stem = word[:-3]
        if _acceptable_stem(stem):
            return stem
    if word[-1] == "e" and len(word) - 1 >= rv:
        stem = word[:-1]
        if _acceptable_stem(stem):
            return stem
    if word[-1] == "s" and word[-2] not in _S_BLOCKERS and word[-2] != "s":
        stem = word[:-1]
        if _acceptable_stem(stem):
            return stem
    if word.endswith(("enn", "onn", "ett", "ell", "eill")):
        stem = word[:-1]
        if _acceptable_stem(stem):
            return stem

    return word


def stem(token: str) -> str:
    """Stem one lowercase French token.

    Iterates suffix removal to a fixpoint, so ``stem(stem(t)) == stem(t)``
    for every input.
    """
    current = token
    while True:
        stripped = _strip_once(current)
        if stripped == current:
            return current
        current = stripped
