"""File formats and atomic artifact writing for the pipeline commands.

All artifacts are written deterministically (sorted keys, fixed float
repr, no timestamps) via a stage-then-rename scheme, so reruns with
unchanged inputs produce byte-identical outputs and failures never leave
partial files behind.
"""

from __future__ import annotations

import csv
import io
import json
import os
from pathlib import Path
from typing import Iterable, Iterator

from ..alignment import GenerationOutput
from ..corpus import Document, Mention, Span
from ..metrics import MatchCounts, Scores
from ..analysis.features import FeatureVector, RunRecord


class InputFormatError(ValueError):
    """Malformed input file; carries path and 1-based line number."""

    def __init__(self, path, line_no: int | None, message: str):
        location = f"{path}:{line_no}" if line_no is not None else str(path)
        super().__init__(f"{location}: {message}")
        self.path = str(path)
        self.line_no = line_no


def read_jsonl(path: Path) -> Iterator[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise InputFormatError(path, line_no, f"invalid JSON: {exc.msg}") from exc
            if not isinstance(obj, dict):
                raise InputFormatError(path, line_no, "expected a JSON object")
            yield line_no, obj


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def dump_jsonl(objs: Iterable[dict]) -> str:
    return "".join(
        json.dumps(obj, sort_keys=True, ensure_ascii=False) + "\n" for obj in objs
    )


def dump_csv(header: list[str], rows: Iterable[Iterable]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(list(row))
    return buffer.getvalue()


def write_artifacts(artifacts: dict[Path, str]) -> None:
    """Write every artifact atomically; nothing lands until all are staged."""
    staged = []
    try:
        for path, text in artifacts.items():
            path = Path(path)
            path.parent.mkdir(parents=True, exist_ok=True)
            tmp = path.with_name(path.name + ".tmp")
            tmp.write_text(text, encoding="utf-8")
            staged.append((tmp, path))
    except BaseException:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise
    for tmp, path in staged:
        os.replace(tmp, path)


# --- normalized corpus -----------------------------------------------------


def document_to_obj(doc: Document) -> dict:
    return {
        "id": doc.id,
        "text": doc.text,
        "mentions": [
            {"fragments": [[s, e] for s, e in m.fragments], "label": m.label}
            for m in doc.mentions
        ],
    }


def load_corpus_jsonl(path: Path) -> list[Document]:
    docs = []
    seen = set()
    for line_no, obj in read_jsonl(path):
        try:
            mentions = [
                Mention(
                    tuple((int(s), int(e)) for s, e in entry["fragments"]),
                    label=entry.get("label", "ADE"),
                )
                for entry in obj.get("mentions", [])
            ]
            doc = Document(id=str(obj["id"]), text=obj["text"], mentions=mentions)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(path, line_no, f"bad document record: {exc}") from exc
        if doc.id in seen:
            raise InputFormatError(path, line_no, f"duplicate document id {doc.id!r}")
        seen.add(doc.id)
        docs.append(doc)
    return docs


# --- prediction files ------------------------------------------------------


def load_span_predictions(path: Path) -> dict[int, dict[str, list[Span]]]:
    """Span-type predictions grouped as {seed: {doc_id: spans}}."""
    by_seed: dict[int, dict[str, list[Span]]] = {}
    for line_no, obj in read_jsonl(path):
        try:
            doc_id = str(obj["doc_id"])
            seed = int(obj["seed"])
            spans = [Span(int(s), int(e)) for s, e in obj["spans"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(path, line_no, f"bad span record: {exc}") from exc
        per_doc = by_seed.setdefault(seed, {})
        if doc_id in per_doc:
            raise InputFormatError(
                path, line_no, f"duplicate prediction for doc {doc_id!r} seed {seed}"
            )
        per_doc[doc_id] = spans
    return by_seed


def load_generative_predictions(path: Path) -> dict[int, dict[str, GenerationOutput]]:
    by_seed: dict[int, dict[str, GenerationOutput]] = {}
    for line_no, obj in read_jsonl(path):
        try:
            doc_id = str(obj["doc_id"])
            seed = int(obj["seed"])
            output = GenerationOutput.from_raw(obj["output"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(path, line_no, f"bad generative record: {exc}") from exc
        per_doc = by_seed.setdefault(seed, {})
        if doc_id in per_doc:
            raise InputFormatError(
                path, line_no, f"duplicate prediction for doc {doc_id!r} seed {seed}"
            )
        per_doc[doc_id] = output
    return by_seed


# --- run records -----------------------------------------------------------


def _scores_from_obj(obj, path, line_no) -> Scores:
    try:
        return Scores(
            precision=float(obj["precision"]),
            recall=float(obj["recall"]),
            f1=float(obj["f1"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(path, line_no, f"bad scores object: {exc}") from exc


def load_run_records(path: Path) -> list[RunRecord]:
    records = []
    seen = set()
    for line_no, obj in read_jsonl(path):
        try:
            features = FeatureVector.from_mapping(obj["features"])
            record = RunRecord(
                model_name=str(obj["model"]),
                features=features,
                seed=int(obj["seed"]),
                dataset=str(obj["dataset"]),
                scores_relaxed=_scores_from_obj(obj["relaxed"], path, line_no),
                scores_strict=_scores_from_obj(obj["strict"], path, line_no),
            )
        except InputFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(path, line_no, f"bad run record: {exc}") from exc
        key = (record.model_name, record.seed, record.dataset)
        if key in seen:
            raise InputFormatError(path, line_no, f"duplicate run record {key}")
        seen.add(key)
        records.append(record)
    return records


def run_record_to_obj(record: RunRecord) -> dict:
    return {
        "model": record.model_name,
        "dataset": record.dataset,
        "seed": record.seed,
        "features": dict(zip(
            ("category", "general", "medical", "social", "from_scratch", "size_bucket"),
            record.features.as_tuple(),
        )),
        "relaxed": scores_to_obj(record.scores_relaxed),
        "strict": scores_to_obj(record.scores_strict),
    }


# --- score reports ---------------------------------------------------------


def scores_to_obj(scores: Scores) -> dict:
    return {"precision": scores.precision, "recall": scores.recall, "f1": scores.f1}


def score_report_obj(seed: int, n_docs: int, counts: MatchCounts,
                     relaxed: Scores, strict: Scores) -> dict:
    return {
        "seed": seed,
        "n_docs": n_docs,
        "counts": {
            "cor": counts.cor,
            "par": counts.par,
            "inc": counts.inc,
            "mis": counts.mis,
            "spu": counts.spu,
        },
        "relaxed": scores_to_obj(relaxed),
        "strict": scores_to_obj(strict),
    }


SCORE_CSV_HEADER = [
    "seed", "n_docs", "cor", "par", "inc", "mis", "spu",
    "relaxed_precision", "relaxed_recall", "relaxed_f1",
    "strict_precision", "strict_recall", "strict_f1",
]


def score_report_csv(report: dict) -> str:
    counts = report["counts"]
    row = [
        report["seed"], report["n_docs"],
        counts["cor"], counts["par"], counts["inc"], counts["mis"], counts["spu"],
        report["relaxed"]["precision"], report["relaxed"]["recall"], report["relaxed"]["f1"],
        report["strict"]["precision"], report["strict"]["recall"], report["strict"]["f1"],
    ]
    return dump_csv(SCORE_CSV_HEADER, [row])
