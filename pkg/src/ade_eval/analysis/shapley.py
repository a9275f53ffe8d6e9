"""Exact Shapley attributions for forest predictions over the six features.

With only six features the 2^6 coalitions are enumerated exactly; no
sampling.  Coalition value v(S) is the interventional expectation: feature
values in S come from the explained row, the rest from each background row
in turn, averaged over the background.  The attribution of feature i is

    phi_i = sum over S not containing i of
            |S|! (d - |S| - 1)! / d!  *  (v(S + i) - v(S))

which satisfies efficiency: baseline + sum(phi) equals the forest's
prediction for the row (up to float rounding).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .features import FEATURE_NAMES, FeatureVector, RunRecord
from .forest import Forest, ForestParams, fit_forest, _as_matrix


@dataclass(frozen=True)
class Attribution:
    contributions: dict[str, float]
    baseline: float
    prediction: float

    def total(self) -> float:
        return self.baseline + sum(self.contributions.values())


def _coalition_values(forest: Forest, x_vec: np.ndarray, bg: np.ndarray) -> np.ndarray:
    d = bg.shape[1]
    n_bg = bg.shape[0]
    n_masks = 1 << d
    composites = np.empty((n_masks * n_bg, d))
    for mask in range(n_masks):
        block = bg.copy()
        for i in range(d):
            if mask >> i & 1:
                block[:, i] = x_vec[i]
        composites[mask * n_bg : (mask + 1) * n_bg] = block
    # Feature grids are tiny and discrete, so most composites repeat;
    # predict each distinct row once.
    unique, inverse = np.unique(composites, axis=0, return_inverse=True)
    predictions = forest.predict_matrix(unique)[inverse]
    return predictions.reshape(n_masks, n_bg).mean(axis=1)


def shapley(forest: Forest, x, background: Sequence) -> Attribution:
    """Exact Shapley attribution of the forest's prediction for ``x``."""
    bg = _as_matrix(background)
    if bg.shape[0] == 0:
        raise ValueError("background must be non-empty")
    x_vec = _as_matrix([x])[0]
    d = bg.shape[1]
    values = _coalition_values(forest, x_vec, bg)

    fact = math.factorial
    weights = [fact(k) * fact(d - 1 - k) / fact(d) for k in range(d)]
    phi = np.zeros(d)
    for i in range(d):
        bit = 1 << i
        for mask in range(1 << d):
            if mask & bit:
                continue
            k = mask.bit_count()
            phi[i] += weights[k] * (values[mask | bit] - values[mask])

    names = FEATURE_NAMES[:d] if d == len(FEATURE_NAMES) else tuple(f"x{i}" for i in range(d))
    return Attribution(
        contributions={name: float(phi[i]) for i, name in enumerate(names)},
        baseline=float(values[0]),
        prediction=float(values[-1]),
    )


@dataclass(frozen=True)
class ShapleySummary:
    """Beeswarm-ready attribution points plus an importance ranking.

    ``points`` has one (run_id, feature, feature_value, shap_value) entry
    per run and feature.  Features are ranked by mean absolute attribution,
    ties broken alphabetically; ``degenerate`` flags an all-zero ranking
    (constant model), where the order is meaningless.
    """

    points: list[tuple[str, str, float, float]]
    ranking: list[str]
    mean_abs_shap: dict[str, float]
    baseline: float
    degenerate: bool

    @property
    def top2(self) -> tuple[str, str]:
        return (self.ranking[0], self.ranking[1])


def shapley_summary(
    records: Sequence[RunRecord],
    params: ForestParams = ForestParams(),
    seed: int = 0,
) -> ShapleySummary:
    """Fit a forest to the run records' relaxed F1 and attribute every run.

    The background set for the attributions is the full design matrix of
    the records themselves.
    """
    if not records:
        raise ValueError("need at least one run record")
    _check_unique(records)
    rows = [(r.features, r.scores_relaxed.f1) for r in records]
    forest = fit_forest(rows, params, seed)
    background = [r.features for r in records]

    cache: dict[tuple[int, ...], Attribution] = {}
    points: list[tuple[str, str, float, float]] = []
    totals = {name: 0.0 for name in FEATURE_NAMES}
    baseline = 0.0
    for record in records:
        key = record.features.as_tuple()
        if key not in cache:
            cache[key] = shapley(forest, record.features, background)
        attribution = cache[key]
        baseline = attribution.baseline
        for name, value in zip(FEATURE_NAMES, key):
            phi = attribution.contributions[name]
            totals[name] += abs(phi)
            points.append((record.run_id, name, float(value), phi))

    mean_abs = {name: totals[name] / len(records) for name in FEATURE_NAMES}
    ranking = sorted(FEATURE_NAMES, key=lambda name: (-mean_abs[name], name))
    return ShapleySummary(
        points=points,
        ranking=ranking,
        mean_abs_shap=mean_abs,
        baseline=baseline,
        degenerate=all(v == 0.0 for v in mean_abs.values()),
    )


def _check_unique(records: Sequence[RunRecord]) -> None:
    seen = set()
    for r in records:
        key = (r.model_name, r.seed, r.dataset)
        if key in seen:
            raise ValueError(f"duplicate run record {key}")
        seen.add(key)


@dataclass(frozen=True)
class PermutationReport:
    """Importance rankings under all six relabelings of the category codes."""

    rankings: list[tuple[tuple[int, int, int], list[str]]]
    exact_match_fraction: float
    mean_footrule: float

    @property
    def top2_sets(self) -> list[tuple[str, str]]:
        return [(ranking[0], ranking[1]) for _, ranking in self.rankings]


def permutation_check(
    records: Sequence[RunRecord],
    params: ForestParams = ForestParams(),
    seed: int = 0,
) -> PermutationReport:
    """Robustness check for the label encoding of the category feature.

    The category codes of all records are relabeled under each of the 6
    permutations of (0, 1, 2); the analysis is rerun each time and the
    resulting importance rankings are compared pairwise (exact-match
    fraction and Spearman footrule distance).
    """
    rankings = []
    for perm in itertools.permutations((0, 1, 2)):
        relabeled = [
            replace(
                r,
                features=replace(r.features, category=perm[r.features.category]),
            )
            for r in records
        ]
        summary = shapley_summary(relabeled, params, seed)
        rankings.append((perm, summary.ranking))

    exact = 0
    footrule_total = 0
    pairs = 0
    for (_, a), (_, b) in itertools.combinations(rankings, 2):
        pairs += 1
        if a == b:
            exact += 1
        pos_a = {name: i for i, name in enumerate(a)}
        pos_b = {name: i for i, name in enumerate(b)}
        footrule_total += sum(abs(pos_a[n] - pos_b[n]) for n in FEATURE_NAMES)

    return PermutationReport(
        rankings=rankings,
        exact_match_fraction=exact / pairs,
        mean_footrule=footrule_total / pairs,
    )
