"""Acceptance suite: one test per release criterion, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the criterion
lines.  Tolerances are pinned here and nowhere else.
"""

import itertools
import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ade_eval.alignment import GenerationOutput, align
from ade_eval.analysis import (
    ForestParams,
    aggregate_runs,
    encode_features,
    fit_forest,
    load_registry,
    permutation_check,
    shapley,
    shapley_summary,
)
from ade_eval.analysis.aggregate import format_table
from ade_eval.analysis.features import FEATURE_NAMES, FeatureVector, RunRecord
from ade_eval.corpus import (
    Mention,
    Span,
    bio_to_spans,
    disambiguate,
    import_standoff,
    spans_to_bio,
    tokenize,
)
from ade_eval.harness import io as hio
from ade_eval.harness.cli import main
from ade_eval.metrics import Scores, classify, corpus_counts, relaxed_scores, strict_scores
from ade_eval.textstats import text_stats


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE [{name}]: FAIL")
        raise
    print(f"ACCEPTANCE [{name}]: PASS")


def random_disjoint_spans(rng, max_pos=200, max_spans=10):
    n = rng.randint(0, max_spans)
    if n == 0:
        return []
    cuts = sorted(rng.sample(range(max_pos + 1), 2 * n))
    return [Span(cuts[i], cuts[i + 1]) for i in range(0, 2 * n, 2)]


def test_c01_metric_identities():
    with criterion("c01 metric identities, 10k random instances, <10s"):
        rng = random.Random(20230401)
        started = time.perf_counter()
        for _ in range(10_000):
            gold = random_disjoint_spans(rng)
            pred = random_disjoint_spans(rng)
            counts = classify(gold, pred)
            assert counts.cor + counts.par + counts.mis == len(gold)
            assert counts.cor + counts.par + counts.spu == len(pred)
            relaxed = relaxed_scores(counts)
            strict = strict_scores(counts)
            assert relaxed.f1 >= strict.f1 - 1e-12
            for value in (relaxed.precision, relaxed.recall, relaxed.f1,
                          strict.precision, strict.recall, strict.f1):
                assert 0.0 <= value <= 1.0
            if gold:
                assert relaxed_scores(classify(gold, gold)).f1 == 1.0
        elapsed = time.perf_counter() - started
        assert elapsed < 10.0, f"took {elapsed:.1f}s"


def test_c02_golden_fixture_exact(golden_dir):
    with criterion("c02 hand-scored golden fixture, tolerance 1e-12"):
        docs = hio.load_corpus_jsonl(golden_dir / "corpus.jsonl")
        preds = hio.load_span_predictions(golden_dir / "preds.jsonl")[1]
        counts = corpus_counts(
            classify(disambiguate(d.mentions), sorted(preds.get(d.id, []))) for d in docs
        )
        assert (counts.cor, counts.par, counts.mis, counts.spu) == (3, 2, 1, 1)
        relaxed = relaxed_scores(counts)
        assert abs(relaxed.precision - Fraction(4, 6)) < 1e-12
        assert abs(relaxed.recall - Fraction(4, 6)) < 1e-12
        assert abs(relaxed.f1 - Fraction(2, 3)) < 1e-12
        strict = strict_scores(counts)
        assert abs(strict.precision - Fraction(3, 6)) < 1e-12
        assert abs(strict.recall - Fraction(3, 6)) < 1e-12


def test_c03_generative_alignment_reproduction():
    with criterion("c03 generative post-processing example"):
        text = "I woke up with a stomach ache and a strong pain, and later my headache was back."
        result = align(text, GenerationOutput.from_raw("stomach ache; strong headache; dizzy"))
        surfaces = [text[s.start : s.end] for s in result.spans]
        # verbatim item -> one span; non-contiguous pair -> one span per word;
        # absent item -> discarded entirely
        assert surfaces == ["stomach ache", "strong", "headache"]
        assert result.discarded == [(2, "dizzy")]


def test_c04_disambiguation_random_and_fixture(cadec_like_dir):
    with criterion("c04 disambiguation: 10k random sets <5s; fixture rate intact"):
        rng = random.Random(7)
        started = time.perf_counter()
        for _ in range(10_000):
            mentions = []
            for _ in range(rng.randint(0, 8)):
                fragments = []
                cursor = 0
                for _ in range(rng.randint(1, 3)):
                    start = cursor + rng.randint(0, 6)
                    end = start + rng.randint(1, 9)
                    fragments.append((start, end))
                    cursor = end
                mentions.append(Mention(tuple(fragments)))
            spans = disambiguate(mentions)
            for a, b in zip(spans, spans[1:]):
                assert a.start < b.start and a.end <= b.start
            rewrapped = [Mention(((s.start, s.end),)) for s in spans]
            assert disambiguate(rewrapped) == spans
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"took {elapsed:.1f}s"

        expected = json.loads((cadec_like_dir / "expected_stats.json").read_text())["totals"]
        mentions_total = 0
        discontinuous = 0
        for txt in sorted(cadec_like_dir.glob("*.txt")):
            doc = import_standoff(
                txt.read_text(encoding="utf-8"),
                txt.with_suffix(".ann").read_text(encoding="utf-8"),
                doc_id=txt.stem,
            )
            mentions_total += len(doc.mentions)
            discontinuous += sum(m.discontinuous for m in doc.mentions)
        assert mentions_total == expected["n_mentions"]
        assert discontinuous == expected["n_discontinuous"]
        rate = discontinuous / mentions_total
        assert 0.08 <= rate <= 0.13, f"discontinuous rate {rate:.3f}"


def test_c05_bio_round_trip():
    with criterion("c05 BIO round-trip on 10k random token-aligned span sets"):
        rng = random.Random(99)
        vocabulary = ["sore", "arm", "bad", "sleep", "cant", "ouch", "meds", "ok"]
        for _ in range(10_000):
            text = " ".join(rng.choice(vocabulary) for _ in range(rng.randint(1, 20)))
            tokens = tokenize(text)
            max_pairs = len(tokens) // 2
            pairs = rng.randint(0, max_pairs)
            spans = []
            if pairs:
                cuts = sorted(rng.sample(range(len(tokens) + 1), 2 * pairs))
                spans = [
                    Span(tokens[cuts[i]].start, tokens[cuts[i + 1] - 1].end)
                    for i in range(0, 2 * pairs, 2)
                    if cuts[i + 1] > cuts[i]
                ]
            assert bio_to_spans(tokens, spans_to_bio(tokens, spans)) == spans


GRID = [
    FeatureVector(c, g, m, s, fs, sb)
    for c in range(3)
    for g in range(2)
    for m in range(2)
    for s in range(2)
    for fs in range(2)
    for sb in range(3)
]

TABLE3 = [encode_features(d) for d in sorted(load_registry().values(), key=lambda d: d.name)]


def test_c06_shapley_axioms():
    with criterion("c06 Shapley axioms over 570 synthetic records, <60s"):
        started = time.perf_counter()

        # efficiency on a realistically noisy forest over the survey design
        rng = np.random.default_rng(11)
        rows = []
        for _ in range(30):
            for fv in TABLE3:
                rows.append((fv, float(np.clip(0.6 + rng.normal(0, 0.03), 0, 1))))
        noisy_forest = fit_forest(rows, ForestParams(n_trees=50), seed=1)
        background = [fv for fv, _ in rows]
        cache = {}
        for fv, _ in rows:
            key = fv.as_tuple()
            if key not in cache:
                cache[key] = shapley(noisy_forest, fv, background)
            attribution = cache[key]
            residual = abs(attribution.total() - noisy_forest.predict(fv))
            assert residual < 1e-9, f"efficiency residual {residual:.2e}"

        # dummy and additive closed form need a forest that *is* the target:
        # noiseless additive target, full grid coverage, no bootstrap
        a, b = 0.08, 0.04
        target = lambda fv: 0.55 + a * fv.social + b * fv.general
        cover = list(itertools.islice(itertools.cycle(GRID), 570))
        exact_forest = fit_forest(
            [(fv, target(fv)) for fv in cover],
            ForestParams(n_trees=20, bootstrap=False, min_leaf=1, features_per_split=6),
            seed=2,
        )
        probe = np.stack([fv.as_array() for fv in GRID])
        fitted = exact_forest.predict_matrix(probe)
        wanted = np.array([target(fv) for fv in GRID])
        assert np.abs(fitted - wanted).max() < 1e-12

        social_mean = float(np.mean([fv.social for fv in cover]))
        general_mean = float(np.mean([fv.general for fv in cover]))
        dummies = ("category", "medical", "from_scratch", "size_bucket")
        for name in dummies:
            assert FEATURE_NAMES.index(name) not in exact_forest.split_features()
        for fv in (GRID[0], GRID[31], GRID[89], GRID[143]):
            attribution = shapley(exact_forest, fv, cover)
            for name in dummies:
                assert attribution.contributions[name] == 0.0
            assert abs(
                attribution.contributions["social"] - a * (fv.social - social_mean)
            ) < 1e-6
            assert abs(
                attribution.contributions["general"] - b * (fv.general - general_mean)
            ) < 1e-6

        elapsed = time.perf_counter() - started
        assert elapsed < 60.0, f"took {elapsed:.1f}s"


def _survey_records(master_seed, n_seeds=30):
    registry = sorted(load_registry().values(), key=lambda d: d.name)
    rng = np.random.default_rng(master_seed)
    records = []
    for seed in range(n_seeds):
        for desc in registry:
            fv = encode_features(desc)
            f1 = 0.60 + 0.10 * fv.social - 0.05 * (fv.category == 1) + rng.normal(0, 0.01)
            f1 = float(np.clip(f1, 0.0, 1.0))
            scores = Scores(f1, f1, f1)
            records.append(RunRecord(desc.name, fv, seed, "synthetic", scores, scores))
    return records


def test_c07_synthetic_analysis_recovery():
    with criterion("c07 synthetic recovery: top-2 in >=90% of 20 seeds, stable permutations"):
        params = ForestParams(n_trees=40, features_per_split=6)
        hits = 0
        for master_seed in range(20):
            summary = shapley_summary(_survey_records(master_seed), params, seed=master_seed)
            if set(summary.ranking[:2]) == {"social", "category"}:
                hits += 1
        assert hits >= 18, f"top-2 recovered in only {hits}/20 master seeds"

        report = permutation_check(_survey_records(0), params, seed=0)
        assert len(report.rankings) == 6
        top2 = {tuple(ranking[:2]) for _, ranking in report.rankings}
        assert len(top2) == 1, f"top-2 varies across encodings: {top2}"
        assert set(next(iter(top2))) == {"social", "category"}


def test_c08_aggregation_closed_form():
    with criterion("c08 aggregation mean/std to 1e-12 in the Relaxed/Strict layout"):
        steps = {
            ("relaxed", "f1"): (Fraction(60, 100), Fraction(3, 1000)),
            ("relaxed", "precision"): (Fraction(55, 100), Fraction(2, 1000)),
            ("relaxed", "recall"): (Fraction(65, 100), Fraction(4, 1000)),
            ("strict", "f1"): (Fraction(50, 100), Fraction(1, 1000)),
            ("strict", "precision"): (Fraction(45, 100), Fraction(5, 1000)),
            ("strict", "recall"): (Fraction(56, 100), Fraction(25, 10000)),
        }

        def value(variant, metric, i):
            base, step = steps[(variant, metric)]
            return base + step * i

        records = []
        fv = FeatureVector(0, 1, 0, 0, 1, 1)
        for i in range(30):
            relaxed = Scores(*(float(value("relaxed", m, i)) for m in ("precision", "recall", "f1")))
            strict = Scores(*(float(value("strict", m, i)) for m in ("precision", "recall", "f1")))
            records.append(RunRecord("model", fv, i, "ds", relaxed, strict))

        (row,) = aggregate_runs(records)
        assert row.n_seeds == 30
        for (variant, metric), (base, step) in steps.items():
            values = [value(variant, metric, i) for i in range(30)]
            mean = sum(values) / 30
            var = sum((v - mean) ** 2 for v in values) / 29
            sigma = float(var) ** 0.5
            agg = row.metrics[(variant, metric)]
            assert abs(agg.mean - float(mean)) < 1e-12
            assert abs(agg.std - sigma) < 1e-12

        table = format_table([row])
        top, columns = table.splitlines()[:2]
        assert top.index("Relaxed") < top.index("Strict")
        assert columns.split() == ["Model", "F1", "P", "R", "F1", "P", "R"]
        assert "+-" in table


def test_c09_text_statistics_fixture(cadec_like_dir):
    with criterion("c09 text statistics on the 50-post fixture (exact + 15%)"):
        expected = json.loads((cadec_like_dir / "expected_stats.json").read_text())["totals"]
        totals = {
            "syllable_count": 0,
            "lexicon_count": 0,
            "sentence_count": 0,
            "character_count": 0,
            "difficult_words": 0,
        }
        for txt in sorted(cadec_like_dir.glob("*.txt")):
            doc = import_standoff(
                txt.read_text(encoding="utf-8"),
                txt.with_suffix(".ann").read_text(encoding="utf-8"),
                doc_id=txt.stem,
            )
            stats = text_stats(doc)
            for key in totals:
                totals[key] += getattr(stats, key)
        for key in ("lexicon_count", "sentence_count", "character_count"):
            assert totals[key] == expected[key], key
        for key in ("syllable_count", "difficult_words"):
            relative = abs(totals[key] - expected[key]) / expected[key]
            assert relative <= 0.15, f"{key} off by {relative:.1%}"


def test_c10_pipeline_determinism(tmp_path, golden_dir):
    with criterion("c10 score+analyze twice -> byte-identical artifacts"):
        runs = tmp_path / "runs.jsonl"
        lines = []
        registry = sorted(load_registry().values(), key=lambda d: d.name)
        for seed in range(3):
            for desc in registry:
                fv = encode_features(desc)
                f1 = round(0.5 + 0.07 * fv.social + 0.002 * seed, 6)
                lines.append(json.dumps({
                    "model": desc.name, "dataset": "d", "seed": seed,
                    "features": dict(zip(FEATURE_NAMES, fv.as_tuple())),
                    "relaxed": {"precision": f1, "recall": f1, "f1": f1},
                    "strict": {"precision": f1, "recall": f1, "f1": f1},
                }))
        runs.write_text("\n".join(lines) + "\n")

        outputs = []
        for attempt in ("one", "two"):
            out = tmp_path / attempt
            cfg = tmp_path / f"{attempt}.cfg"
            cfg.write_text(
                f"corpus = {golden_dir / 'corpus.jsonl'}\n"
                f"predictions = {golden_dir / 'preds.jsonl'}\n"
                f"runs = {runs}\n"
                f"out = {out}\n"
                "rf.n_trees = 8\n"
                "rf.features_per_split = 6\n"
                "master_seed = 5\n"
            )
            assert main(["score", "--config", str(cfg)]) == 0
            assert main(["analyze", "--config", str(cfg)]) == 0
            outputs.append({
                path.name: path.read_bytes() for path in sorted(out.iterdir())
            })
        assert outputs[0].keys() == outputs[1].keys()
        for name in outputs[0]:
            assert outputs[0][name] == outputs[1][name], f"{name} differs between runs"
