#!/usr/bin/env python3
"""Drive ingest and score over the bundled fixtures.

Ingests the 50-post standoff fixture corpus (text statistics report and
normalized JSONL), then scores the 3-document golden fixture against its
checked-in predictions.

Usage: python scripts/run_fixture_pipeline.py [outdir]
"""

import json
import sys
import tempfile
from pathlib import Path

from ade_eval.harness.cli import main as cli_main

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "tests" / "fixtures"


def run(outdir: Path) -> None:
    with tempfile.TemporaryDirectory() as tmp:
        ingest_cfg = Path(tmp) / "ingest.cfg"
        ingest_cfg.write_text(
            f"corpus = {FIXTURES / 'cadec_like'}\n"
            "corpus_format = standoff\n"
            f"out = {outdir}\n",
            encoding="utf-8",
        )
        score_cfg = Path(tmp) / "score.cfg"
        score_cfg.write_text(
            f"corpus = {FIXTURES / 'golden' / 'corpus.jsonl'}\n"
            f"predictions = {FIXTURES / 'golden' / 'preds.jsonl'}\n"
            "predictions_kind = spans\n"
            f"out = {outdir}\n",
            encoding="utf-8",
        )
        for command, config in (("ingest", ingest_cfg), ("score", score_cfg)):
            code = cli_main([command, "--config", str(config)])
            if code != 0:
                raise SystemExit(code)

    stats = json.loads((outdir / "corpus_stats.json").read_text())
    score = json.loads((outdir / "score_seed1.json").read_text())
    print(f"artifacts in {outdir}")
    print(
        f"corpus: {stats['n_docs']} docs, "
        f"{stats['fields']['character_count']['mean']:.0f} chars/post, "
        f"{stats['fields']['num_ades']['mean']:.2f} ADEs/post"
    )
    print(f"golden fixture relaxed F1: {score['relaxed']['f1']:.4f}")


if __name__ == "__main__":
    run(Path(sys.argv[1]) if len(sys.argv) > 1 else Path("out/fixture_demo"))
