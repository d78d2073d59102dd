import random

import pytest


def synthetic_corpus(n_lines=60, seed=17):
    """Aligned source/target lines with 3..12-token sources."""
    rng = random.Random(seed)
    vocab = [
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta",
        "theta", "iota", "kappa", "lam", "mu", "nu", "xi", "omicron",
    ]
    sources, targets = [], []
    for _ in range(n_lines):
        tokens = [rng.choice(vocab) for _ in range(rng.randint(3, 12))]
        sources.append(" ".join(tokens))
        targets.append(" ".join(reversed(tokens)))
    return sources, targets


@pytest.fixture
def corpus_dir(tmp_path):
    sources, targets = synthetic_corpus()
    (tmp_path / "corpus.src").write_text(
        "".join(s + "\n" for s in sources), encoding="utf-8"
    )
    (tmp_path / "corpus.tgt").write_text(
        "".join(t + "\n" for t in targets), encoding="utf-8"
    )
    return tmp_path
