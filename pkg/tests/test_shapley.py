import numpy as np
import pytest

from ade_eval.analysis import (
    ForestParams,
    encode_features,
    fit_forest,
    load_registry,
    permutation_check,
    shapley,
    shapley_summary,
)
from ade_eval.analysis.features import FEATURE_NAMES, FeatureVector, RunRecord
from ade_eval.metrics import Scores

DESIGN = [encode_features(d) for d in sorted(load_registry().values(), key=lambda d: d.name)]

# Every combination of the discrete feature grid; fitting on it without
# bootstrap makes each tree reproduce a noiseless target exactly, so the
# forest *is* the target function and closed-form oracles apply.
GRID = [
    FeatureVector(c, g, m, s, fs, sb)
    for c in range(3)
    for g in range(2)
    for m in range(2)
    for s in range(2)
    for fs in range(2)
    for sb in range(3)
]

EXACT = ForestParams(n_trees=10, bootstrap=False, min_leaf=1, features_per_split=6)


def exact_forest(target):
    return fit_forest([(fv, target(fv)) for fv in GRID], EXACT, seed=5)


def test_constant_forest_all_contributions_zero():
    forest = exact_forest(lambda fv: 0.42)
    attribution = shapley(forest, GRID[0], GRID)
    assert all(phi == 0.0 for phi in attribution.contributions.values())
    assert attribution.baseline == pytest.approx(0.42)


def test_single_active_feature_gets_full_credit():
    forest = exact_forest(lambda fv: float(fv.social))
    x = FeatureVector(0, 0, 0, 1, 0, 0)
    background = [FeatureVector(0, 0, 0, 0, 0, 0)] * 4
    attribution = shapley(forest, x, background)
    assert attribution.contributions["social"] == pytest.approx(1.0, abs=1e-12)
    for name in FEATURE_NAMES:
        if name != "social":
            assert attribution.contributions[name] == 0.0


def test_additive_model_matches_closed_form():
    a, b = 0.1, 0.07
    forest = exact_forest(lambda fv: a * fv.social + b * fv.general + 0.3)
    bg = np.stack([fv.as_array() for fv in GRID])
    social_mean = bg[:, FEATURE_NAMES.index("social")].mean()
    general_mean = bg[:, FEATURE_NAMES.index("general")].mean()
    for x in (GRID[0], GRID[17], GRID[101]):
        attribution = shapley(forest, x, GRID)
        # closed-form Shapley of an additive function
        assert attribution.contributions["social"] == pytest.approx(
            a * (x.social - social_mean), abs=1e-6
        )
        assert attribution.contributions["general"] == pytest.approx(
            b * (x.general - general_mean), abs=1e-6
        )
        for name in ("category", "medical", "from_scratch", "size_bucket"):
            assert attribution.contributions[name] == 0.0


def test_dummy_feature_zero_when_never_split():
    forest = exact_forest(lambda fv: 0.2 + 0.1 * fv.medical)
    assert FEATURE_NAMES.index("from_scratch") not in forest.split_features()
    attribution = shapley(forest, GRID[42], GRID)
    assert attribution.contributions["from_scratch"] == 0.0


def test_symmetric_features_get_equal_attribution():
    forest = exact_forest(lambda fv: 0.1 * (fv.general + fv.medical))
    x = FeatureVector(0, 1, 1, 0, 0, 0)
    attribution = shapley(forest, x, GRID)
    assert attribution.contributions["general"] == pytest.approx(
        attribution.contributions["medical"], abs=1e-12
    )


def test_efficiency_on_noisy_fitted_forest():
    rng = np.random.default_rng(3)
    rows = []
    for _ in range(10):
        for fv in DESIGN:
            rows.append((fv, float(np.clip(0.6 + rng.normal(0, 0.05), 0, 1))))
    forest = fit_forest(rows, ForestParams(n_trees=40), seed=7)
    background = [fv for fv, _ in rows]
    for fv in DESIGN:
        attribution = shapley(forest, fv, background)
        assert abs(attribution.total() - forest.predict(fv)) < 1e-9


def test_shapley_rejects_empty_background():
    forest = exact_forest(lambda fv: 0.5)
    with pytest.raises(ValueError):
        shapley(forest, GRID[0], [])


# --- summary -----------------------------------------------------------------


def _records(target, n_seeds=3, dataset="d"):
    records = []
    for seed in range(n_seeds):
        for i, fv in enumerate(DESIGN):
            value = float(np.clip(target(fv), 0.0, 1.0))
            scores = Scores(value, value, value)
            records.append(RunRecord(f"m{i}", fv, seed, dataset, scores, scores))
    return records


def test_summary_point_count_is_runs_times_features():
    records = _records(lambda fv: 0.5 + 0.05 * fv.social)
    summary = shapley_summary(records, ForestParams(n_trees=10), seed=0)
    assert len(summary.points) == len(records) * 6


def test_summary_constant_model_degenerate():
    records = _records(lambda fv: 0.5)
    summary = shapley_summary(records, ForestParams(n_trees=10), seed=0)
    assert summary.degenerate
    assert all(value == 0.0 for _, _, _, value in summary.points)


def test_summary_ranks_dominant_feature_first():
    records = _records(lambda fv: 0.4 + 0.2 * fv.social)
    summary = shapley_summary(records, ForestParams(n_trees=20, features_per_split=6), seed=0)
    assert summary.ranking[0] == "social"
    assert not summary.degenerate


def test_summary_rejects_duplicate_runs():
    records = _records(lambda fv: 0.5)
    with pytest.raises(ValueError):
        shapley_summary(records + records[:1], ForestParams(n_trees=5), seed=0)


def test_permutation_check_reports_six_rankings():
    records = _records(lambda fv: 0.4 + 0.1 * fv.general)
    report = permutation_check(records, ForestParams(n_trees=10, features_per_split=6), seed=0)
    assert len(report.rankings) == 6
    assert len({perm for perm, _ in report.rankings}) == 6


def test_permutation_check_category_blind_model_fully_stable():
    # noiseless target independent of the category feature: no tree ever
    # splits on it, so all six encodings give identical rankings
    records = _records(lambda fv: 0.3 + 0.1 * fv.social + 0.05 * fv.general, n_seeds=2)
    report = permutation_check(records, ForestParams(n_trees=10, features_per_split=6), seed=1)
    assert report.exact_match_fraction == 1.0
    assert report.mean_footrule == 0.0
    first = report.rankings[0][1]
    assert all(ranking == first for _, ranking in report.rankings)
