"""Multi-seed aggregation, add-on-module deltas, and iso-F1 curves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .features import RunRecord

METRIC_KEYS = ("f1", "precision", "recall")
VARIANTS = ("relaxed", "strict")


@dataclass(frozen=True)
class MetricAggregate:
    mean: float
    std: float
    n: int
    single_seed: bool


@dataclass(frozen=True)
class AggregateRow:
    model: str
    dataset: str
    n_seeds: int
    # keyed (variant, metric), e.g. ("relaxed", "f1")
    metrics: dict[tuple[str, str], MetricAggregate]


def _sample_std(values: Sequence[float]) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(np.asarray(values, dtype=float), ddof=1))


def aggregate_runs(records: Iterable[RunRecord]) -> list[AggregateRow]:
    """Mean and sample standard deviation per (model, dataset) group.

    Groups with a single seed report std 0 and are flagged.  Rows come out
    sorted by (dataset, model); the seed order within a group does not
    affect the result.
    """
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for record in records:
        groups.setdefault((record.model_name, record.dataset), []).append(record)

    rows = []
    for (model, dataset), members in sorted(groups.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        metrics: dict[tuple[str, str], MetricAggregate] = {}
        for variant in VARIANTS:
            for metric in METRIC_KEYS:
                values = [
                    getattr(
                        r.scores_relaxed if variant == "relaxed" else r.scores_strict,
                        metric,
                    )
                    for r in members
                ]
                metrics[(variant, metric)] = MetricAggregate(
                    mean=float(np.mean(values)),
                    std=_sample_std(values),
                    n=len(values),
                    single_seed=len(values) == 1,
                )
        rows.append(AggregateRow(model, dataset, len(members), metrics))
    return rows


def format_table(rows: Sequence[AggregateRow], scale: float = 100.0) -> str:
    """Text rendering with the Relaxed/Strict x F1/P/R column grouping."""
    header_1 = f"{'':24s} " + " ".join(f"{v:^41s}" for v in ("Relaxed", "Strict"))
    header_2 = f"{'Model':24s} " + " ".join(
        f"{m:^13s}" for _ in VARIANTS for m in ("F1", "P", "R")
    )
    lines = [header_1, header_2]
    for row in rows:
        cells = []
        for variant in VARIANTS:
            for metric in METRIC_KEYS:
                agg = row.metrics[(variant, metric)]
                cells.append(f"{agg.mean * scale:6.2f} +-{agg.std * scale:5.2f}")
        lines.append(f"{row.model:24s} " + " ".join(cells))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ModuleEffectReport:
    """Per-model (dP, dR, dF1) of augmented minus base, in percentage points."""

    deltas: dict[str, tuple[float, float, float]]
    missing_base: list[str]
    missing_augmented: list[str]


def module_effect(
    base: Sequence[AggregateRow],
    augmented: Sequence[AggregateRow],
) -> ModuleEffectReport:
    """Effect of an add-on module: augmented minus base, relaxed metrics.

    Models present on only one side are excluded from the deltas and listed
    in the report instead.
    """
    base_by_model = {(r.model, r.dataset): r for r in base}
    aug_by_model = {(r.model, r.dataset): r for r in augmented}
    shared = sorted(base_by_model.keys() & aug_by_model.keys())
    if not shared:
        raise ValueError("base and augmented results share no models")

    deltas = {}
    for key in shared:
        b, a = base_by_model[key], aug_by_model[key]
        deltas["/".join(key)] = tuple(
            (a.metrics[("relaxed", m)].mean - b.metrics[("relaxed", m)].mean) * 100.0
            for m in ("precision", "recall", "f1")
        )
    return ModuleEffectReport(
        deltas=deltas,
        missing_base=sorted("/".join(k) for k in aug_by_model.keys() - base_by_model.keys()),
        missing_augmented=sorted("/".join(k) for k in base_by_model.keys() - aug_by_model.keys()),
    )


def iso_f1_curve(f1: float, recalls: Sequence[float]) -> np.ndarray:
    """Precision values tracing the curve of constant F1.

    Solving the harmonic mean for precision gives p = f1*r / (2r - f1),
    with a pole at r = f1/2; recall points at or below the pole are
    rejected.
    """
    if not 0.0 < f1 < 1.0:
        raise ValueError(f"f1 must be in (0, 1), got {f1}")
    r = np.asarray(recalls, dtype=float)
    if (r <= f1 / 2 + 1e-12).any():
        raise ValueError(f"recall grid must stay above the pole at {f1 / 2}")
    return f1 * r / (2 * r - f1)


def iso_f1_start(f1: float) -> float:
    """Smallest recall with precision <= 1 on the curve (where p = 1)."""
    return f1 / (2 - f1)
