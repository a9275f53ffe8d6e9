"""Command-line pipeline: ingest -> score -> aggregate -> analyze -> report.

Every command reads a validated JobConfig, computes its artifacts fully in
memory, and writes them atomically.  Reruns with unchanged inputs are
byte-identical.  Malformed inputs exit with status 2 and a file/line
diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from ..alignment import align, dedupe_spans
from ..analysis import aggregate_runs, module_effect, permutation_check, shapley_summary
from ..analysis.aggregate import AggregateRow, format_table
from ..corpus import StandoffParseError, disambiguate, import_standoff, stratified_split
from ..metrics import classify, corpus_counts, relaxed_scores, strict_scores
from ..textstats import common_words, count_syllables, text_stats, word_tokens
from . import io as hio
from .config import ConfigError, JobConfig
from .plots import PlotPoint, delta_bars, pr_scatter

STATS_FIELDS = (
    "syllable_count",
    "lexicon_count",
    "sentence_count",
    "character_count",
    "difficult_words",
    "num_ades",
)

ADE_STATS_FIELDS = (
    "syllable_count",
    "lexicon_count",
    "character_count",
    "difficult_words",
)


def _load_standoff_dir(root: Path):
    docs = []
    txt_files = sorted(root.glob("*.txt"))
    if not txt_files:
        raise hio.InputFormatError(root, None, "no .txt documents found")
    for txt in txt_files:
        ann = txt.with_suffix(".ann")
        if not ann.exists():
            raise hio.InputFormatError(ann, None, "missing annotation file")
        text = txt.read_text(encoding="utf-8")
        try:
            docs.append(import_standoff(text, ann.read_text(encoding="utf-8"), doc_id=txt.stem))
        except StandoffParseError as exc:
            raise hio.InputFormatError(ann, None, str(exc)) from exc
    return docs


def _select_formats(cfg: JobConfig) -> tuple[bool, bool]:
    return cfg.output_format in ("json", "both"), cfg.output_format in ("csv", "both")


def _mean_std(values) -> dict:
    values = np.asarray(list(values), dtype=float)
    return {
        "mean": float(values.mean()) if len(values) else 0.0,
        "std": float(values.std(ddof=1)) if len(values) > 1 else 0.0,
    }


def _ade_surface_stats(docs) -> dict:
    """Text statistics over the disambiguated mention surfaces themselves."""
    common = common_words()
    per_mention: dict[str, list[float]] = {name: [] for name in ADE_STATS_FIELDS}
    for doc in docs:
        for span in disambiguate(doc.mentions):
            surface = doc.text[span.start : span.end]
            words = word_tokens(surface)
            syllables = [count_syllables(t.text) for t in words]
            per_mention["syllable_count"].append(sum(syllables))
            per_mention["lexicon_count"].append(len(words))
            per_mention["character_count"].append(len(surface))
            per_mention["difficult_words"].append(
                sum(
                    1
                    for tok, syl in zip(words, syllables)
                    if syl > 2 and tok.text.lower() not in common
                )
            )
    return {name: _mean_std(values) for name, values in per_mention.items()}


def cmd_ingest(cfg: JobConfig) -> int:
    cfg.require("corpus")
    if cfg.corpus_format == "standoff":
        docs = _load_standoff_dir(cfg.corpus)
    else:
        docs = hio.load_corpus_jsonl(cfg.corpus)
    docs.sort(key=lambda d: d.id)

    stats = [text_stats(d) for d in docs]
    report = {
        "n_docs": len(docs),
        "n_positive": sum(d.has_ade for d in docs),
        "n_negative": sum(not d.has_ade for d in docs),
        "n_mentions": sum(len(d.mentions) for d in docs),
        "n_discontinuous": sum(m.discontinuous for d in docs for m in d.mentions),
        "fields": {
            name: _mean_std(getattr(s, name) for s in stats) for name in STATS_FIELDS
        },
        "ade_fields": _ade_surface_stats(docs),
    }

    want_json, want_csv = _select_formats(cfg)
    artifacts = {cfg.out / "normalized.jsonl": hio.dump_jsonl(map(hio.document_to_obj, docs))}

    # make the configured split ratios operative: emit stratified doc-id
    # sets when both strata are large enough, record why otherwise
    try:
        train, val, test = stratified_split(docs, cfg.split_ratios, cfg.master_seed)
        artifacts[cfg.out / "splits.json"] = hio.dump_json({
            "ratios": list(cfg.split_ratios),
            "seed": cfg.master_seed,
            "train": sorted(train),
            "val": sorted(val),
            "test": sorted(test),
        })
        report["splits"] = {"train": len(train), "val": len(val), "test": len(test)}
    except ValueError as exc:
        report["splits"] = {"skipped": str(exc)}

    if want_json:
        artifacts[cfg.out / "corpus_stats.json"] = hio.dump_json(report)
    if want_csv:
        rows = [
            [f"text_{name}", report["fields"][name]["mean"], report["fields"][name]["std"]]
            for name in STATS_FIELDS
        ] + [
            [f"ade_{name}", report["ade_fields"][name]["mean"], report["ade_fields"][name]["std"]]
            for name in ADE_STATS_FIELDS
        ]
        artifacts[cfg.out / "corpus_stats.csv"] = hio.dump_csv(["field", "mean", "std"], rows)
    hio.write_artifacts(artifacts)
    return 0


def cmd_score(cfg: JobConfig) -> int:
    cfg.require("corpus", "predictions")
    docs = hio.load_corpus_jsonl(cfg.corpus)
    docs.sort(key=lambda d: d.id)
    gold = {d.id: disambiguate(d.mentions) for d in docs}
    text_by_id = {d.id: d.text for d in docs}

    if cfg.predictions_kind == "spans":
        by_seed = hio.load_span_predictions(cfg.predictions)
        for seed, per_doc in by_seed.items():
            for doc_id, spans in per_doc.items():
                if doc_id not in gold:
                    raise hio.InputFormatError(
                        cfg.predictions, None, f"unknown doc_id {doc_id!r} (seed {seed})"
                    )
                spans.sort()
                for a, b in zip(spans, spans[1:]):
                    if a.overlaps(b):
                        raise hio.InputFormatError(
                            cfg.predictions,
                            None,
                            f"overlapping spans for doc {doc_id!r} seed {seed}: {a} / {b}",
                        )
    else:
        generative = hio.load_generative_predictions(cfg.predictions)
        by_seed = {}
        for seed, per_doc in generative.items():
            resolved = {}
            for doc_id, output in per_doc.items():
                if doc_id not in text_by_id:
                    raise hio.InputFormatError(
                        cfg.predictions, None, f"unknown doc_id {doc_id!r} (seed {seed})"
                    )
                resolved[doc_id] = dedupe_spans(align(text_by_id[doc_id], output).spans)
            by_seed[seed] = resolved

    seeds = list(cfg.seeds) if cfg.seeds is not None else sorted(by_seed)
    if not seeds:
        raise ConfigError("no seeds configured and none found in predictions")

    want_json, want_csv = _select_formats(cfg)
    artifacts = {}
    for seed in seeds:
        per_doc = by_seed.get(seed, {})
        counts = corpus_counts(
            classify(gold[doc.id], per_doc.get(doc.id, [])) for doc in docs
        )
        report = hio.score_report_obj(
            seed, len(docs), counts, relaxed_scores(counts), strict_scores(counts)
        )
        if want_json:
            artifacts[cfg.out / f"score_seed{seed}.json"] = hio.dump_json(report)
        if want_csv:
            artifacts[cfg.out / f"score_seed{seed}.csv"] = hio.score_report_csv(report)
    hio.write_artifacts(artifacts)
    return 0


def _aggregate_row_obj(row: AggregateRow) -> dict:
    obj = {"model": row.model, "dataset": row.dataset, "n_seeds": row.n_seeds}
    for variant in ("relaxed", "strict"):
        obj[variant] = {}
        for metric in ("f1", "precision", "recall"):
            agg = row.metrics[(variant, metric)]
            obj[variant][metric] = {
                "mean": agg.mean,
                "std": agg.std,
                "single_seed": agg.single_seed,
            }
    return obj


_AGG_CSV_HEADER = ["model", "dataset", "n_seeds"] + [
    f"{variant}_{metric}_{stat}"
    for variant in ("relaxed", "strict")
    for metric in ("f1", "precision", "recall")
    for stat in ("mean", "std")
]


def _aggregate_csv(rows) -> str:
    table = []
    for row in rows:
        record = [row.model, row.dataset, row.n_seeds]
        for variant in ("relaxed", "strict"):
            for metric in ("f1", "precision", "recall"):
                agg = row.metrics[(variant, metric)]
                record.extend([agg.mean, agg.std])
        table.append(record)
    return hio.dump_csv(_AGG_CSV_HEADER, table)


def cmd_aggregate(cfg: JobConfig) -> int:
    cfg.require("runs")
    rows = aggregate_runs(hio.load_run_records(cfg.runs))
    want_json, want_csv = _select_formats(cfg)
    artifacts = {cfg.out / "aggregate.txt": format_table(rows)}
    if want_json:
        artifacts[cfg.out / "aggregate.json"] = hio.dump_json(
            [_aggregate_row_obj(r) for r in rows]
        )
    if want_csv:
        artifacts[cfg.out / "aggregate.csv"] = _aggregate_csv(rows)
    hio.write_artifacts(artifacts)
    return 0


def cmd_analyze(cfg: JobConfig) -> int:
    cfg.require("runs")
    records = hio.load_run_records(cfg.runs)
    summary = shapley_summary(records, cfg.rf, cfg.master_seed)

    analysis = {
        "ranking": summary.ranking,
        "mean_abs_shap": summary.mean_abs_shap,
        "baseline": summary.baseline,
        "degenerate": summary.degenerate,
        "n_runs": len(records),
    }
    if cfg.permutation_check:
        check = permutation_check(records, cfg.rf, cfg.master_seed)
        analysis["permutation_check"] = {
            "rankings": [
                {"permutation": list(perm), "ranking": ranking}
                for perm, ranking in check.rankings
            ],
            "exact_match_fraction": check.exact_match_fraction,
            "mean_footrule": check.mean_footrule,
        }

    artifacts = {
        cfg.out / "attributions.csv": hio.dump_csv(
            ["run_id", "feature", "feature_value", "shap_value"], summary.points
        ),
        cfg.out / "analysis.json": hio.dump_json(analysis),
    }
    hio.write_artifacts(artifacts)
    return 0


def cmd_deltas(cfg: JobConfig) -> int:
    cfg.require("base_runs", "augmented_runs")
    base = aggregate_runs(hio.load_run_records(cfg.base_runs))
    augmented = aggregate_runs(hio.load_run_records(cfg.augmented_runs))
    report = module_effect(base, augmented)

    obj = {
        "deltas": {
            key: {"precision": p, "recall": r, "f1": f}
            for key, (p, r, f) in report.deltas.items()
        },
        "missing_base": report.missing_base,
        "missing_augmented": report.missing_augmented,
    }
    want_json, want_csv = _select_formats(cfg)
    artifacts = {}
    if want_json:
        artifacts[cfg.out / "deltas.json"] = hio.dump_json(obj)
    if want_csv:
        artifacts[cfg.out / "deltas.csv"] = hio.dump_csv(
            ["model", "delta_precision", "delta_recall", "delta_f1"],
            [[key, *values] for key, values in sorted(report.deltas.items())],
        )
    footer = ""
    if report.missing_base or report.missing_augmented:
        footer = (
            f"excluded (missing in base): {', '.join(report.missing_base) or '-'}\n"
            f"excluded (missing in augmented): {', '.join(report.missing_augmented) or '-'}\n"
        )
    artifacts[cfg.out / "deltas.txt"] = _deltas_text(report) + footer
    hio.write_artifacts(artifacts)
    return 0


def _deltas_text(report) -> str:
    lines = [f"{'model':32s} {'dP':>8s} {'dR':>8s} {'dF1':>8s}"]
    for key, (p, r, f) in sorted(report.deltas.items()):
        lines.append(f"{key:32s} {p:+8.2f} {r:+8.2f} {f:+8.2f}")
    return "\n".join(lines) + "\n"


def _domain(fv) -> str:
    in_domain = fv.medical or fv.social
    if fv.general and not in_domain:
        return "general"
    if in_domain and not fv.general:
        return "specialized"
    return "mixed"


def cmd_plot(cfg: JobConfig) -> int:
    cfg.require("runs")
    records = hio.load_run_records(cfg.runs)
    rows = aggregate_runs(records)
    features = {}
    for record in records:
        previous = features.setdefault((record.model_name, record.dataset), record.features)
        if previous != record.features:
            raise hio.InputFormatError(
                cfg.runs, None, f"inconsistent features for model {record.model_name!r}"
            )

    datasets = {row.dataset for row in rows}
    points = []
    for row in rows:
        fv = features[(row.model, row.dataset)]
        label = row.model if len(datasets) == 1 else f"{row.model} [{row.dataset}]"
        points.append(
            PlotPoint(
                label=label,
                category=fv.category,
                domain=_domain(fv),
                size_bucket=fv.size_bucket,
                recall=row.metrics[("relaxed", "recall")].mean,
                precision=row.metrics[("relaxed", "precision")].mean,
            )
        )
    artifacts = {cfg.out / "pr_scatter.svg": pr_scatter(points)}

    if cfg.base_runs is not None and cfg.augmented_runs is not None:
        cfg.require("base_runs", "augmented_runs")
        report = module_effect(
            aggregate_runs(hio.load_run_records(cfg.base_runs)),
            aggregate_runs(hio.load_run_records(cfg.augmented_runs)),
        )
        artifacts[cfg.out / "delta_bars.svg"] = delta_bars(report.deltas)
    hio.write_artifacts(artifacts)
    return 0


_COMMANDS = {
    "ingest": cmd_ingest,
    "score": cmd_score,
    "aggregate": cmd_aggregate,
    "analyze": cmd_analyze,
    "deltas": cmd_deltas,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ade-eval",
        description="Evaluation and analysis pipeline for ADE span extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, handler in _COMMANDS.items():
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", type=Path, default=None, help="config file path")
        cmd.add_argument("--out", type=str, default=None, help="output directory")
        cmd.add_argument("--seed", type=str, default=None, help="master seed")
        cmd.add_argument("--format", type=str, choices=["json", "csv", "both"],
                         default=None, help="report format")
        cmd.set_defaults(handler=handler)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    flags = {"out": args.out, "master_seed": args.seed, "format": args.format}
    try:
        cfg = JobConfig.from_sources(args.config, flag_values=flags)
        return args.handler(cfg)
    except (ConfigError, hio.InputFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
