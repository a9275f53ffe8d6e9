import numpy as np
import pytest

from ade_eval.analysis import ForestParams, encode_features, fit_forest, load_registry

DESIGN = [encode_features(d) for d in sorted(load_registry().values(), key=lambda d: d.name)]


def test_constant_target_predicts_constant_exactly():
    rows = [(fv, 0.37) for fv in DESIGN]
    forest = fit_forest(rows, ForestParams(n_trees=15), seed=1)
    for fv in DESIGN:
        assert forest.predict(fv) == 0.37


def test_single_separating_feature_zero_training_mse():
    rows = [([0.0], 0.0)] * 30 + [([1.0], 1.0)] * 30
    forest = fit_forest(rows, ForestParams(n_trees=25, max_depth=3), seed=2)
    X = np.array([[0.0]] * 30 + [[1.0]] * 30)
    y = np.array([0.0] * 30 + [1.0] * 30)
    predictions = forest.predict_matrix(X)
    assert np.mean((predictions - y) ** 2) == 0.0


def test_synthetic_regression_beats_noise_floor():
    # y = 0.6 + 0.1 * social + noise(sigma=0.01); the irreducible error of
    # the generator is sigma^2 = 1e-4, so a sound fit stays under 5e-4 on
    # held-out data.
    rng = np.random.default_rng(42)
    rows = []
    for _ in range(30):
        for fv in DESIGN:
            rows.append((fv, 0.6 + 0.1 * fv.social + rng.normal(0.0, 0.01)))
    forest = fit_forest(rows, ForestParams(n_trees=60), seed=3)

    X_test = np.stack([fv.as_array() for fv in DESIGN] * 10)
    y_test = np.array(
        [0.6 + 0.1 * fv.social + rng.normal(0.0, 0.01) for _ in range(10) for fv in DESIGN]
    )
    mse = float(np.mean((forest.predict_matrix(X_test) - y_test) ** 2))
    assert mse < 5e-4


def test_fit_is_deterministic_bit_identical():
    rng = np.random.default_rng(0)
    rows = [(fv, float(np.clip(0.5 + rng.normal(0, 0.05), 0, 1))) for fv in DESIGN * 5]
    probe = np.stack([fv.as_array() for fv in DESIGN])
    a = fit_forest(rows, ForestParams(n_trees=20), seed=9).predict_matrix(probe)
    b = fit_forest(rows, ForestParams(n_trees=20), seed=9).predict_matrix(probe)
    assert np.array_equal(a, b)
    c = fit_forest(rows, ForestParams(n_trees=20), seed=10).predict_matrix(probe)
    assert not np.array_equal(a, c)


def test_min_leaf_blocks_splitting():
    rows = [([float(i)], i / 10.0) for i in range(10)]
    forest = fit_forest(rows, ForestParams(n_trees=5, min_leaf=10, bootstrap=False), seed=0)
    predictions = forest.predict_matrix(np.array([[float(i)] for i in range(10)]))
    assert np.allclose(predictions, 0.45)
    assert forest.split_features() == set()


def test_rejects_degenerate_input():
    with pytest.raises(ValueError):
        fit_forest([([0.0], 0.5)])
    with pytest.raises(ValueError):
        fit_forest([([0.0], 0.5), ([1.0], 1.5)])
    with pytest.raises(ValueError):
        fit_forest([([0.0], 0.5), ([1.0], 0.7)], ForestParams(min_leaf=5))


def test_predict_checks_shape():
    forest = fit_forest([(fv, 0.5) for fv in DESIGN], ForestParams(n_trees=3), seed=0)
    with pytest.raises(ValueError):
        forest.predict_matrix(np.zeros((4, 2)))


def test_features_per_split_default_is_third_of_dims():
    assert ForestParams().resolved_features_per_split(6) == 2
    assert ForestParams().resolved_features_per_split(1) == 1
    assert ForestParams(features_per_split=6).resolved_features_per_split(6) == 6
    with pytest.raises(ValueError):
        ForestParams(features_per_split=7).resolved_features_per_split(6)
