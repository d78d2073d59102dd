"""Acceptance gate: one test per shipping criterion.

Each test is self-contained and checks one observable guarantee of the
package, from metric-kernel math through end-to-end pipeline determinism.
Run with ``pytest -v tests/test_acceptance.py`` to get one pass/fail line
per criterion.
"""

import csv
import os
import random
import subprocess
import sys
import time
import unicodedata
from pathlib import Path

import pytest

import oracles
from tmfuzzy.cli import main as cli_main
from tmfuzzy.corpus import RawCorpus, TranslationUnit, filter_valid
from tmfuzzy.csvio import write_results
from tmfuzzy.evaluation import z_sweep
from tmfuzzy.idf import IdfTable, build_idf
from tmfuzzy.metrics import (
    METRIC_NAMES,
    MetricConfig,
    edit_distance_score,
    mwngp,
    ngp,
    pm,
    score_pair,
    wngp,
)
from tmfuzzy.normalize import chinese_normalizer, french_normalizer, generic_normalizer
from tmfuzzy.retrieval import best_match, build_bank, match_all

GOLDEN = Path(__file__).parent / "data" / "golden"
NORM = generic_normalizer()
Z_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)


def seg_of(tokens):
    return NORM.segment(" ".join(tokens))


def oracle_score(metric, m, c, doc_count, df, n_max=4, z=0.75):
    if metric == "pm":
        return oracles.ref_pm(m, c)
    if metric == "wpm":
        return oracles.ref_wpm(m, c, doc_count, df)
    if metric == "ed":
        return oracles.ref_ed_score(m, c)
    if metric == "ngp":
        return oracles.ref_ngp(m, c, n_max, z)
    if metric == "wngp":
        return oracles.ref_wngp(m, c, n_max, z, doc_count, df)
    return oracles.ref_mwngp(m, c, n_max, z, doc_count, df)


def test_criterion_1_metric_kernel_agrees_with_independent_oracle():
    """1000+ random pairs: values in [0,1], ED exact, n-gram family 1e-12."""
    started = time.perf_counter()
    rng = random.Random(20240817)
    checked = 0
    for _ in range(1000):
        alphabet = rng.randrange(3, 21)
        m_toks = [f"t{rng.randrange(alphabet)}" for _ in range(rng.randrange(13))]
        c_toks = [f"t{rng.randrange(alphabet)}" for _ in range(rng.randrange(13))]
        extra = [
            [f"t{rng.randrange(alphabet)}" for _ in range(rng.randrange(1, 8))]
            for _ in range(3)
        ]
        doc_count, df = oracles.build_df([m_toks, c_toks] + extra)
        idf = IdfTable(doc_count, df)
        z = rng.choice(Z_GRID)
        m, c = seg_of(m_toks), seg_of(c_toks)

        for metric in METRIC_NAMES:
            value = score_pair(
                m, c, MetricConfig(metric=metric, ngram_max=4, z=z), idf
            ).value
            assert 0.0 <= value <= 1.0, (metric, m_toks, c_toks)

        assert edit_distance_score(m, c) == oracles.ref_ed_score(m_toks, c_toks)
        assert ngp(m, c, MetricConfig(metric="ngp", z=z)) == pytest.approx(
            oracles.ref_ngp(m_toks, c_toks, 4, z), abs=1e-12
        )
        assert wngp(m, c, MetricConfig(metric="wngp", z=z), idf) == pytest.approx(
            oracles.ref_wngp(m_toks, c_toks, 4, z, doc_count, df), abs=1e-12
        )
        assert mwngp(m, c, MetricConfig(metric="mwngp", z=z), idf) == pytest.approx(
            oracles.ref_mwngp(m_toks, c_toks, 4, z, doc_count, df), abs=1e-12
        )
        checked += 1
    elapsed = time.perf_counter() - started
    assert checked >= 1000
    assert elapsed < 10.0, f"kernel suite took {elapsed:.1f}s"


def test_criterion_2_self_match_is_one_and_disjoint_is_zero():
    rng = random.Random(99)
    for _ in range(50):
        # PM and ED hit 1.0 on any nonempty self-match, no side conditions
        any_toks = [f"w{rng.randrange(5)}" for _ in range(rng.randrange(1, 13))]
        m = seg_of(any_toks)
        assert pm(m, m) == 1.0
        assert edit_distance_score(m, m) == 1.0

        # the other four need >= N tokens and all-positive idf
        n_tokens = rng.randrange(4, 13)
        toks = [f"w{rng.randrange(6)}" for _ in range(n_tokens)]
        m = seg_of(toks)
        decoys = [seg_of(["d1", "d2"]), seg_of(["d3", "d4"])]
        idf = build_idf([m] + decoys)  # df(tok) = 1 < doc_count -> idf > 0
        for metric in METRIC_NAMES:
            value = score_pair(m, m, MetricConfig(metric=metric), idf).value
            assert value == 1.0, (metric, toks)

        # disjoint vocabulary scores 0 on all six metrics
        other = seg_of([f"v{rng.randrange(6)}" for _ in range(rng.randrange(1, 13))])
        idf2 = build_idf([m, other] + decoys)
        for metric in METRIC_NAMES:
            value = score_pair(m, other, MetricConfig(metric=metric), idf2).value
            assert value == 0.0, (metric, toks)


def test_criterion_3_idf_scale_invariance_within_1e12_relative():
    class ScaledIdf:
        def __init__(self, base, factor):
            self.base, self.factor = base, factor

        def idf(self, token):
            return self.factor * self.base.idf(token)

    rng = random.Random(31337)
    for _ in range(100):
        docs = [
            seg_of([f"t{rng.randrange(8)}" for _ in range(rng.randrange(1, 9))])
            for _ in range(4)
        ]
        idf = build_idf(docs)
        doubled = ScaledIdf(idf, 2.0)
        m = seg_of([f"t{rng.randrange(8)}" for _ in range(rng.randrange(1, 10))])
        c = seg_of([f"t{rng.randrange(8)}" for _ in range(rng.randrange(1, 10))])
        for metric in ("wpm", "wngp", "mwngp"):
            cfg = MetricConfig(metric=metric)
            base_value = score_pair(m, c, cfg, idf).value
            scaled_value = score_pair(m, c, cfg, doubled).value
            assert scaled_value == pytest.approx(base_value, rel=1e-12), metric


def test_criterion_4_mwngp_strictly_monotone_in_z():
    short = seg_of(list("abcde"))
    long = seg_of(list("abcdefgh"))
    decoys = [seg_of(["p1", "p2"]), seg_of(["p3", "p4"])]
    idf = build_idf([short, long] + decoys)

    # |C_n| > |M_n| at every populated order -> strictly increasing
    increasing = [
        mwngp(short, long, MetricConfig(z=z), idf) for z in Z_GRID
    ]
    assert all(a < b for a, b in zip(increasing, increasing[1:])), increasing

    # swapped roles: |C_n| < |M_n| -> strictly decreasing
    decreasing = [
        mwngp(long, short, MetricConfig(z=z), idf) for z in Z_GRID
    ]
    assert all(a > b for a, b in zip(decreasing, decreasing[1:])), decreasing


def test_criterion_5_best_match_equals_oracle_scan_and_parallel_matches_serial(
    tmp_path,
):
    rng = random.Random(42424242)
    for _ in range(100):
        vocab = rng.randrange(3, 12)
        sources = [
            [f"t{rng.randrange(vocab)}" for _ in range(rng.randrange(1, 9))]
            for _ in range(rng.randrange(1, 51))
        ]
        queries = [
            [f"t{rng.randrange(vocab)}" for _ in range(rng.randrange(1, 9))]
            for _ in range(2)
        ]
        units = [
            TranslationUnit(i, seg_of(toks), NORM.segment("t"))
            for i, toks in enumerate(sources)
        ]
        mtbt_segs = [seg_of(q) for q in queries]
        bank = build_bank(units, "generic", idf_scope="bank+mtbt", mtbt=mtbt_segs)
        doc_count, df = oracles.build_df(sources + queries)
        for metric in METRIC_NAMES:
            cfg = MetricConfig(metric=metric)
            for q_toks, q_seg in zip(queries, mtbt_segs):
                got = best_match(q_seg, bank, cfg)
                scores = [
                    oracle_score(metric, q_toks, c, doc_count, df) for c in sources
                ]
                assert got.tmb_index == oracles.ref_best_index(scores), (
                    metric,
                    q_toks,
                    sources,
                )

    # parallel and serial runs must produce identical output files
    sources = [
        [f"t{rng.randrange(9)}" for _ in range(rng.randrange(2, 9))] for _ in range(40)
    ]
    units = [
        TranslationUnit(i, seg_of(toks), NORM.segment("t"))
        for i, toks in enumerate(sources)
    ]
    mtbt = [seg_of([f"t{rng.randrange(9)}" for _ in range(5)]) for _ in range(10)]
    bank = build_bank(units, "generic", idf_scope="bank+mtbt", mtbt=mtbt)
    for metric in METRIC_NAMES:
        cfg = MetricConfig(metric=metric)
        serial_path = tmp_path / f"serial_{metric}.csv"
        parallel_path = tmp_path / f"parallel_{metric}.csv"
        write_results(serial_path, match_all(mtbt, bank, cfg, workers=1), mtbt, units)
        write_results(
            parallel_path, match_all(mtbt, bank, cfg, workers=4), mtbt, units
        )
        assert serial_path.read_bytes() == parallel_path.read_bytes(), metric


def test_criterion_6_golden_fixture_reproduced(tmp_path):
    started = time.perf_counter()
    results = []
    for metric in METRIC_NAMES:
        out = tmp_path / f"results_{metric}.csv"
        code = cli_main(
            [
                "match",
                "--bank-src", str(GOLDEN / "tmb.src"),
                "--bank-tgt", str(GOLDEN / "tmb.tgt"),
                "--mtbt", str(GOLDEN / "mtbt.src"),
                "--metric", metric,
                "--out", str(out),
            ]
        )
        assert code == 0
        results.append(str(out))
    ev = tmp_path / "ev"
    assert cli_main(["eval-agreement", "--results", *results,
                     "--out-dir", str(ev)]) == 0
    assert cli_main(["eval-found-best", "--results", *results,
                     "--judgments", str(GOLDEN / "judgments.csv"),
                     "--out-dir", str(ev)]) == 0
    assert cli_main(["export-scatter", "--results", *results,
                     "--judgments", str(GOLDEN / "judgments.csv"),
                     "--out-dir", str(ev)]) == 0

    # values must equal the precomputed oracle outputs checked into the repo
    assert (ev / "agreement.csv").read_bytes() == (
        GOLDEN / "expected" / "agreement.csv"
    ).read_bytes()
    assert (ev / "found_best.csv").read_bytes() == (
        GOLDEN / "expected" / "found_best.csv"
    ).read_bytes()
    for metric in METRIC_NAMES:
        assert (ev / f"scatter_{metric}.csv").read_bytes() == (
            GOLDEN / "expected" / f"scatter_{metric}.csv"
        ).read_bytes(), metric

    # structural guarantees, independent of the frozen values
    with open(ev / "agreement.csv", newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0][1:], rows[1:]
    matrix = [[float(cell) for cell in row[1:]] for row in body]
    assert [row[0] for row in body] == header
    for a in range(len(matrix)):
        assert matrix[a][a] == 100.0
        for b in range(len(matrix)):
            assert matrix[a][b] == matrix[b][a]

    with open(ev / "found_best.csv", newline="", encoding="utf-8") as fh:
        counts = {row["metric"]: int(row["count"]) for row in csv.DictReader(fh)}
    assert sum(counts.values()) >= 5

    best_seen = {}
    for metric in METRIC_NAMES:
        with open(ev / f"scatter_{metric}.csv", newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                if row["is_best"] == "true":
                    best_seen.setdefault(int(row["mtbt_index"]), metric)
    assert set(best_seen) == {0, 1, 2, 3, 4}

    elapsed = time.perf_counter() - started
    assert elapsed < 5.0, f"golden pipeline took {elapsed:.1f}s"


def test_criterion_7_zsweep_average_length_non_decreasing():
    # nested candidates: a short precise cover and a long full cover per query
    mtbt_texts = [
        "alpha beta gamma delta epsilon",
        "one two three four five",
        "red green blue cyan magenta",
    ]
    sources = [
        "alpha beta gamma",
        "alpha beta gamma delta epsilon zeta eta theta iota kappa",
        "one two three",
        "one two three four five six seven eight nine ten",
        "red green blue",
        "red green blue cyan magenta yellow black white grey brown",
        "pad1 pad2 pad3",
        "pad4 pad5 pad6",
    ]
    units = [
        TranslationUnit(i, NORM.segment(s), NORM.segment(f"t{i}"))
        for i, s in enumerate(sources)
    ]
    mtbt = [NORM.segment(t) for t in mtbt_texts]
    bank = build_bank(units, "generic", idf_scope="bank+mtbt", mtbt=mtbt)
    table = z_sweep(mtbt, bank, list(Z_GRID))
    lengths = [length for _, length in table]
    assert lengths == sorted(lengths), lengths
    assert lengths[0] < lengths[-1], lengths  # the sweep actually moves


def test_criterion_8_preprocessing_boundaries_and_filters():
    # token-count validity: 5..100 inclusive, counted before normalization
    for count, kept in ((4, False), (5, True), (100, True), (101, False)):
        source = " ".join(f"w{i}" for i in range(count))
        units = filter_valid(RawCorpus((source,), ("t",)), NORM)
        assert bool(units) is kept, count

    # Chinese filter: exactly the three configured code-point ranges
    chinese = chinese_normalizer()
    table = [
        (0x3FFF, False), (0x4000, True), (0x4DFF, True),
        (0x4E00, True), (0x9FFF, True), (0xA000, False),
        (0xF8FF, False), (0xFA0E, True), (0xFAFF, True), (0xFB00, False),
    ]
    for codepoint, kept in table:
        raw = chr(codepoint)
        expected = [unicodedata.normalize("NFC", raw)] if kept else []
        assert chinese.tokens(raw) == expected, hex(codepoint)
    assert chinese.tokens("软件 100 OpenOffice") == ["软件"]
    assert chinese.tokens("mixed中token") == ["mixed中token"]

    # French filter: tokens without an alphabetic character are removed
    french = french_normalizer()
    for text, expected in [
        ("Ne pas utiliser 100 mg !", ["ne", "pas", "util", "mg"]),
        ("100 200 300", []),
        ("!? . , ;", []),
        ("a1 2b 33", ["a1", "2b"]),
    ]:
        got = french.tokens(text)
        assert got == expected, text
        assert all(any(ch.isalpha() for ch in tok) for tok in got)


def test_criterion_9_end_to_end_runs_are_byte_identical(tmp_path):
    corpus_src, corpus_tgt = [], []
    rng = random.Random(5150)
    vocab = [f"word{i}" for i in range(18)]
    for _ in range(50):
        toks = [rng.choice(vocab) for _ in range(rng.randint(4, 11))]
        corpus_src.append(" ".join(toks))
        corpus_tgt.append(" ".join(reversed(toks)))

    judgment_lines = ["mtbt_index,tmb_index,rating,rater_id"]
    jrng = random.Random(7)
    for i in range(4):
        for j in range(12):
            judgment_lines.append(f"{i},{j},{jrng.randint(1, 5)},r1")

    def run_pipeline(workdir, hashseed):
        workdir.mkdir()
        (workdir / "corpus.src").write_text(
            "".join(s + "\n" for s in corpus_src), encoding="utf-8"
        )
        (workdir / "corpus.tgt").write_text(
            "".join(t + "\n" for t in corpus_tgt), encoding="utf-8"
        )
        (workdir / "judgments.csv").write_text(
            "".join(line + "\n" for line in judgment_lines), encoding="utf-8"
        )
        env = dict(os.environ, PYTHONHASHSEED=hashseed)
        commands = [
            ["sample", "--corpus-src", "corpus.src", "--corpus-tgt", "corpus.tgt",
             "--mtbt-size", "4", "--tmb-size", "12", "--seed", "13",
             "--out-dir", "."],
            ["match", "--bank-src", "tmb.src", "--bank-tgt", "tmb.tgt",
             "--mtbt", "mtbt.src", "--metric", "mwngp", "--out", "results_mwngp.csv"],
            ["match", "--bank-src", "tmb.src", "--bank-tgt", "tmb.tgt",
             "--mtbt", "mtbt.src", "--metric", "ed", "--out", "results_ed.csv"],
            ["eval-agreement", "--results", "results_mwngp.csv", "results_ed.csv",
             "--out-dir", "."],
            ["eval-found-best", "--results", "results_mwngp.csv", "results_ed.csv",
             "--judgments", "judgments.csv", "--out-dir", "."],
            ["export-scatter", "--results", "results_mwngp.csv", "results_ed.csv",
             "--judgments", "judgments.csv", "--out-dir", "."],
            ["zsweep", "--bank-src", "tmb.src", "--bank-tgt", "tmb.tgt",
             "--mtbt", "mtbt.src", "--z-values", "0,0.25,0.5,0.75,1.0",
             "--out", "zsweep.csv"],
        ]
        for command in commands:
            proc = subprocess.run(
                [sys.executable, "-m", "tmfuzzy", *command],
                cwd=workdir, env=env, capture_output=True, text=True,
            )
            assert proc.returncode == 0, (command, proc.stderr)

    run_pipeline(tmp_path / "run_a", hashseed="0")
    run_pipeline(tmp_path / "run_b", hashseed="31415926")

    artifacts = sorted(
        p.name for p in (tmp_path / "run_a").iterdir() if p.is_file()
    )
    assert "results_mwngp.csv" in artifacts and "zsweep.csv" in artifacts
    for name in artifacts:
        a = (tmp_path / "run_a" / name).read_bytes()
        b = (tmp_path / "run_b" / name).read_bytes()
        assert a == b, f"{name} differs between identical runs"
