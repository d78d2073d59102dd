"""Command-line pipeline: sample, match, evaluate, sweep, serve.

One executable with subcommands that chain the library into the full
experiment: sample a corpus into workload (MTBT) and bank (TMB), retrieve
best matches per metric, then compute the evaluation artifacts.  Every
run echoes its effective configuration to a JSON file next to its
outputs; re-running with ``--config that_file.json`` reproduces the
artifacts byte for byte.  All randomness flows from ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import csvio
from .corpus import (
    SampleSpec,
    TranslationUnit,
    filter_valid,
    load_parallel,
    load_tsv,
    sample_mtbt_tmb,
)
from .errors import AlignmentError, TmFuzzyError
from .evaluation import (
    agreement_matrix,
    aggregate_mos,
    best_flags,
    found_best_counts,
    read_judgments,
    scatter_rows,
    z_sweep,
)
from .metrics import METRIC_NAMES, MetricConfig, score_pair
from .normalize import generic_normalizer, get_normalizer
from .retrieval import IDF_SCOPES, build_bank, match_all, threshold_filter, top_k

_CONFIG_SKIP_KEYS = {"config", "command"}


def _add_config_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--config",
        help="JSON config from a previous run; explicit flags override it",
    )


def build_parser(suppress_defaults: bool = False) -> argparse.ArgumentParser:
    """Build the CLI parser.

    With ``suppress_defaults`` every option defaults to SUPPRESS, which is
    how we tell explicitly-given flags apart from defaults when merging a
    --config file.
    """

    def dflt(value):
        return argparse.SUPPRESS if suppress_defaults else value

    parser = argparse.ArgumentParser(
        prog="tmfuzzy",
        description="Translation-memory fuzzy matching and evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="sample a corpus into MTBT and TMB files")
    _add_config_flag(p_sample)
    p_sample.add_argument("--corpus-src", default=dflt(None))
    p_sample.add_argument("--corpus-tgt", default=dflt(None))
    p_sample.add_argument("--corpus-tsv", default=dflt(None), help="single TSV corpus (source<TAB>target)")
    p_sample.add_argument("--normalizer", default=dflt("generic"))
    p_sample.add_argument("--mtbt-size", type=int, default=dflt(None))
    p_sample.add_argument("--tmb-size", type=int, default=dflt(None))
    p_sample.add_argument("--seed", type=int, default=dflt(0))
    p_sample.add_argument("--out-dir", default=dflt("."))

    p_match = sub.add_parser("match", help="retrieve the best bank match per MTBT segment")
    _add_config_flag(p_match)
    p_match.add_argument("--bank-src", default=dflt(None))
    p_match.add_argument("--bank-tgt", default=dflt(None))
    p_match.add_argument("--mtbt", default=dflt(None))
    p_match.add_argument("--normalizer", default=dflt("generic"))
    p_match.add_argument("--metric", default=dflt("mwngp"))
    p_match.add_argument("--ngram-max", type=int, default=dflt(4))
    p_match.add_argument("--z", type=float, default=dflt(0.75))
    p_match.add_argument("--idf-scope", default=dflt("bank+mtbt"))
    p_match.add_argument("--ed-denominator", default=dflt("tokens"))
    p_match.add_argument("--top-k", type=int, default=dflt(1))
    p_match.add_argument("--threshold", type=float, default=dflt(None))
    p_match.add_argument("--workers", type=int, default=dflt(1))
    p_match.add_argument("--explain", action="store_true", default=dflt(False),
                         help="print per-order precision breakdowns to stdout")
    p_match.add_argument("--out", default=dflt("results.csv"))

    p_agree = sub.add_parser("eval-agreement", help="pairwise metric agreement matrix")
    _add_config_flag(p_agree)
    p_agree.add_argument("--results", nargs="+", default=dflt(None),
                         help="one results.csv per metric")
    p_agree.add_argument("--out-dir", default=dflt("."))

    p_best = sub.add_parser("eval-found-best", help="found-most-helpful counts per metric")
    _add_config_flag(p_best)
    p_best.add_argument("--results", nargs="+", default=dflt(None))
    p_best.add_argument("--judgments", default=dflt(None))
    p_best.add_argument("--out-dir", default=dflt("."))

    p_scatter = sub.add_parser("export-scatter", help="score-vs-MOS scatter data per metric")
    _add_config_flag(p_scatter)
    p_scatter.add_argument("--results", nargs="+", default=dflt(None))
    p_scatter.add_argument("--judgments", default=dflt(None))
    p_scatter.add_argument("--out-dir", default=dflt("."))

    p_zsweep = sub.add_parser("zsweep", help="average retrieved length across Z values")
    _add_config_flag(p_zsweep)
    p_zsweep.add_argument("--bank-src", default=dflt(None))
    p_zsweep.add_argument("--bank-tgt", default=dflt(None))
    p_zsweep.add_argument("--mtbt", default=dflt(None))
    p_zsweep.add_argument("--normalizer", default=dflt("generic"))
    p_zsweep.add_argument("--metric", default=dflt("mwngp"))
    p_zsweep.add_argument("--ngram-max", type=int, default=dflt(4))
    p_zsweep.add_argument("--z-values", default=dflt("0,0.25,0.5,0.75,1.0"))
    p_zsweep.add_argument("--idf-scope", default=dflt("bank+mtbt"))
    p_zsweep.add_argument("--length-on", default=dflt("match"))
    p_zsweep.add_argument("--workers", type=int, default=dflt(1))
    p_zsweep.add_argument("--out", default=dflt("zsweep.csv"))

    p_explain = sub.add_parser("explain-normalizer", help="print a normalizer's stage list")
    p_explain.add_argument("name")

    p_serve = sub.add_parser("serve", help="run the HTTP matching service")
    p_serve.add_argument("--host", default=dflt("127.0.0.1"))
    p_serve.add_argument("--port", type=int, default=dflt(8000))

    return parser


def _merge_config(ns: argparse.Namespace, argv) -> argparse.Namespace:
    """Overlay a JSON config under explicitly-given flags."""
    path = Path(ns.config)
    loaded = json.loads(path.read_text(encoding="utf-8"))
    if not isinstance(loaded, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    command = loaded.pop("command", ns.command)
    if command != ns.command:
        raise ValueError(
            f"{path}: config is for {command!r}, not {ns.command!r}"
        )
    explicit = vars(build_parser(suppress_defaults=True).parse_args(argv))
    known = set(vars(ns))
    for key, value in loaded.items():
        if key in _CONFIG_SKIP_KEYS:
            continue
        if key not in known:
            raise ValueError(f"{path}: unknown config key {key!r}")
        if key not in explicit:
            setattr(ns, key, value)
    return ns


def _echo_config(ns: argparse.Namespace, path: Path) -> None:
    payload = {
        key: value
        for key, value in sorted(vars(ns).items())
        if key not in _CONFIG_SKIP_KEYS
    }
    payload["command"] = ns.command
    path.write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _config_path_for(out: Path) -> Path:
    return out.with_name(out.stem + "_config.json")


def _require(ns: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(ns, n.replace("-", "_")) is None]
    if missing:
        raise ValueError("missing required flag(s): " + ", ".join(f"--{n}" for n in missing))


def _write_lines(path: Path, lines) -> None:
    path.write_text("".join(line + "\n" for line in lines), encoding="utf-8")


def _load_corpus(ns: argparse.Namespace):
    if ns.corpus_tsv:
        return load_tsv(ns.corpus_tsv)
    _require(ns, "corpus-src", "corpus-tgt")
    return load_parallel(ns.corpus_src, ns.corpus_tgt)


def cmd_sample(ns: argparse.Namespace) -> int:
    if not ns.corpus_tsv:
        _require(ns, "corpus-src", "corpus-tgt")
    _require(ns, "mtbt-size", "tmb-size")
    normalizer = get_normalizer(ns.normalizer)
    corpus = _load_corpus(ns)
    units = filter_valid(corpus, normalizer)
    spec = SampleSpec(mtbt_size=ns.mtbt_size, tmb_size=ns.tmb_size, seed=ns.seed)
    mtbt, tmb = sample_mtbt_tmb(units, spec)

    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    _write_lines(out_dir / "mtbt.src", [s.original_text for s in mtbt])
    _write_lines(out_dir / "tmb.src", [u.source.original_text for u in tmb])
    _write_lines(out_dir / "tmb.tgt", [u.target.original_text for u in tmb])
    manifest = {
        "seed": ns.seed,
        "normalizer": ns.normalizer,
        "corpus_lines": len(corpus),
        "valid_units": len(units),
        "mtbt_size": len(mtbt),
        "tmb_size": len(tmb),
    }
    (out_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    _echo_config(ns, out_dir / "sample_config.json")
    print(f"wrote {len(mtbt)} MTBT and {len(tmb)} TMB segments to {out_dir}")
    return 0


def _load_bank_and_mtbt(ns: argparse.Namespace):
    _require(ns, "bank-src", "bank-tgt", "mtbt")
    normalizer = get_normalizer(ns.normalizer)
    bank_corpus = load_parallel(ns.bank_src, ns.bank_tgt)
    units = [
        # Bank files are taken as-is: no validity filtering on prepared inputs.
        _unit(i, normalizer, src, tgt)
        for i, (src, tgt) in enumerate(zip(bank_corpus.source_lines, bank_corpus.target_lines))
    ]
    mtbt_lines = Path(ns.mtbt).read_text(encoding="utf-8").splitlines()
    mtbt = [normalizer.segment(line) for line in mtbt_lines]
    if ns.idf_scope not in IDF_SCOPES:
        raise ValueError(f"--idf-scope must be one of {IDF_SCOPES}")
    bank = build_bank(units, ns.normalizer, idf_scope=ns.idf_scope, mtbt=mtbt)
    return bank, mtbt, units


def _unit(index, normalizer, src, tgt) -> TranslationUnit:
    return TranslationUnit(
        index=index,
        source=normalizer.segment(src),
        target=generic_normalizer().segment(tgt),
    )


def cmd_match(ns: argparse.Namespace) -> int:
    cfg = MetricConfig(
        metric=ns.metric,
        ngram_max=ns.ngram_max,
        z=ns.z,
        ed_denominator=ns.ed_denominator,
    )
    if ns.threshold is not None and not 0.0 <= ns.threshold <= 1.0:
        raise ValueError("--threshold must be in [0, 1]")
    if ns.top_k < 1:
        raise ValueError("--top-k must be >= 1")
    bank, mtbt, units = _load_bank_and_mtbt(ns)

    if ns.top_k == 1:
        results = match_all(mtbt, bank, cfg, workers=ns.workers)
    else:
        results = []
        for i, seg in enumerate(mtbt):
            results.extend(top_k(seg, bank, cfg, ns.top_k, mtbt_index=i))
    if ns.threshold is not None:
        results = threshold_filter(results, ns.threshold)

    out = Path(ns.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    csvio.write_results(out, results, mtbt, units)
    _echo_config(ns, _config_path_for(out))

    if ns.explain:
        by_index = {unit.index: unit for unit in units}
        for r in results:
            score = score_pair(mtbt[r.mtbt_index], by_index[r.tmb_index].source, cfg, bank.idf)
            detail = ""
            if score.breakdown is not None:
                parts = " ".join(
                    f"p{n}={p:.6f}" for n, p in enumerate(score.breakdown, start=1)
                )
                detail = f" [{parts}]"
            print(f"mtbt {r.mtbt_index} -> tmb {r.tmb_index} {r.metric}={r.score:.6f}{detail}")

    print(f"wrote {len(results)} results to {out}")
    return 0


def _read_results_by_metric(paths) -> dict:
    results_by_metric = {}
    for path in paths:
        metric, results = csvio.read_results(path)
        if not results:
            raise ValueError(f"{path}: no result rows")
        if metric in results_by_metric:
            raise AlignmentError(f"metric {metric!r} appears in more than one results file")
        results_by_metric[metric] = results
    return results_by_metric


def cmd_eval_agreement(ns: argparse.Namespace) -> int:
    _require(ns, "results")
    results_by_metric = _read_results_by_metric(ns.results)
    metrics, matrix = agreement_matrix(results_by_metric)
    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csvio.write_agreement(out_dir / "agreement.csv", metrics, matrix)
    _echo_config(ns, out_dir / "eval_agreement_config.json")
    print(f"wrote {out_dir / 'agreement.csv'}")
    return 0


def cmd_eval_found_best(ns: argparse.Namespace) -> int:
    _require(ns, "results", "judgments")
    results_by_metric = _read_results_by_metric(ns.results)
    mos = aggregate_mos(read_judgments(ns.judgments))
    counts = found_best_counts(results_by_metric, mos)
    total = len(next(iter(results_by_metric.values())))
    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csvio.write_found_best(out_dir / "found_best.csv", counts, total)
    _echo_config(ns, out_dir / "eval_found_best_config.json")
    print(f"wrote {out_dir / 'found_best.csv'}")
    return 0


def cmd_export_scatter(ns: argparse.Namespace) -> int:
    _require(ns, "results", "judgments")
    results_by_metric = _read_results_by_metric(ns.results)
    mos = aggregate_mos(read_judgments(ns.judgments))
    flags = best_flags(results_by_metric, mos)
    out_dir = Path(ns.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for metric, results in results_by_metric.items():
        rows = scatter_rows(results, mos, flags[metric])
        csvio.write_scatter(out_dir / f"scatter_{metric}.csv", rows)
    _echo_config(ns, out_dir / "export_scatter_config.json")
    print(f"wrote scatter files for {len(results_by_metric)} metrics to {out_dir}")
    return 0


def cmd_zsweep(ns: argparse.Namespace) -> int:
    if ns.metric not in METRIC_NAMES:
        raise ValueError(f"unknown metric {ns.metric!r}")
    if isinstance(ns.z_values, str):
        z_values = [float(part) for part in ns.z_values.split(",") if part.strip()]
    else:
        z_values = [float(z) for z in ns.z_values]
    if not z_values:
        raise ValueError("--z-values is empty")
    for z in z_values:
        if not 0.0 <= z <= 1.0:
            raise ValueError(f"z value {z} outside [0, 1]")
    bank, mtbt, _ = _load_bank_and_mtbt(ns)
    table = z_sweep(
        mtbt,
        bank,
        z_values,
        metric=ns.metric,
        ngram_max=ns.ngram_max,
        length_on=ns.length_on,
        workers=ns.workers,
    )
    out = Path(ns.out)
    if out.parent != Path(""):
        out.parent.mkdir(parents=True, exist_ok=True)
    csvio.write_zsweep(out, table)
    _echo_config(ns, _config_path_for(out))
    print(f"wrote {out}")
    return 0


def cmd_explain_normalizer(ns: argparse.Namespace) -> int:
    normalizer = get_normalizer(ns.name)
    print(f"normalizer: {normalizer.name}")
    for stage in normalizer.stages:
        print(f"  - {stage}")
    return 0


def cmd_serve(ns: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=ns.host, port=ns.port)
    return 0


_COMMANDS = {
    "sample": cmd_sample,
    "match": cmd_match,
    "eval-agreement": cmd_eval_agreement,
    "eval-found-best": cmd_eval_found_best,
    "export-scatter": cmd_export_scatter,
    "zsweep": cmd_zsweep,
    "explain-normalizer": cmd_explain_normalizer,
    "serve": cmd_serve,
}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        if getattr(ns, "config", None):
            ns = _merge_config(ns, argv if argv is not None else sys.argv[1:])
        return _COMMANDS[ns.command](ns)
    except ValueError as exc:
        print(f"tmfuzzy: {exc}", file=sys.stderr)
        return 2
    except (TmFuzzyError, OSError) as exc:
        print(f"tmfuzzy: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
