"""Random forest regressor built from scratch.

Trees grow greedily on variance reduction (sum-of-squared-error gain),
considering a random subset of features at every node.  Leaves store the
mean target of their training rows.  All randomness derives from one seed
through spawned generator streams, one per tree, so fitting is
deterministic and trees are independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

_GAIN_EPS = 1e-12


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 200
    max_depth: int | None = None
    min_leaf: int = 2
    features_per_split: int | None = None
    bootstrap: bool = True

    def resolved_features_per_split(self, n_features: int) -> int:
        if self.features_per_split is not None:
            if not 1 <= self.features_per_split <= n_features:
                raise ValueError("features_per_split out of range")
            return self.features_per_split
        return max(1, math.ceil(n_features / 3))


class _Tree:
    """Flat-array binary tree: feature < 0 marks a leaf."""

    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self, feature, threshold, left, right, value):
        self.feature = np.asarray(feature, dtype=np.intp)
        self.threshold = np.asarray(threshold, dtype=float)
        self.left = np.asarray(left, dtype=np.intp)
        self.right = np.asarray(right, dtype=np.intp)
        self.value = np.asarray(value, dtype=float)

    def predict(self, X: np.ndarray) -> np.ndarray:
        node = np.zeros(X.shape[0], dtype=np.intp)
        while True:
            feats = self.feature[node]
            active = feats >= 0
            if not active.any():
                break
            rows = np.nonzero(active)[0]
            cur = node[rows]
            go_left = X[rows, feats[rows]] <= self.threshold[cur]
            node[rows] = np.where(go_left, self.left[cur], self.right[cur])
        return self.value[node]

    def split_features(self) -> set[int]:
        return set(self.feature[self.feature >= 0].tolist())


class _TreeBuilder:
    def __init__(self, X, y, params, m, rng):
        self.X = X
        self.y = y
        self.params = params
        self.m = m
        self.rng = rng
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def build(self, idx: np.ndarray, depth: int) -> int:
        node = self._new_node()
        y_node = self.y[idx]
        # centered mean: exact for constant leaves, better conditioned otherwise
        self.value[node] = float(y_node[0] + (y_node - y_node[0]).mean())

        p = self.params
        if p.max_depth is not None and depth >= p.max_depth:
            return node
        if len(idx) < 2 * p.min_leaf:
            return node
        sse_total = float(((y_node - y_node.mean()) ** 2).sum())
        if sse_total <= _GAIN_EPS:
            return node

        feats = np.sort(self.rng.choice(self.X.shape[1], size=self.m, replace=False))
        best_gain = _GAIN_EPS
        best_feature = -1
        best_threshold = 0.0
        for f in feats:
            gain, threshold = self._best_split_on(idx, int(f), sse_total)
            if gain > best_gain:
                best_gain, best_feature, best_threshold = gain, int(f), threshold
        if best_feature < 0:
            return node

        go_left = self.X[idx, best_feature] <= best_threshold
        self.feature[node] = best_feature
        self.threshold[node] = best_threshold
        self.left[node] = self.build(idx[go_left], depth + 1)
        self.right[node] = self.build(idx[~go_left], depth + 1)
        return node

    def _best_split_on(self, idx, f, sse_total):
        xs = self.X[idx, f]
        order = np.argsort(xs, kind="stable")
        xs = xs[order]
        ys = self.y[idx][order]
        n = len(ys)
        cum1 = np.cumsum(ys)
        cum2 = np.cumsum(ys * ys)
        total1, total2 = cum1[-1], cum2[-1]

        left_n = np.arange(1, n)
        right_n = n - left_n
        valid = (
            (xs[:-1] < xs[1:])
            & (left_n >= self.params.min_leaf)
            & (right_n >= self.params.min_leaf)
        )
        if not valid.any():
            return 0.0, 0.0
        sse_left = cum2[:-1] - cum1[:-1] ** 2 / left_n
        sse_right = (total2 - cum2[:-1]) - (total1 - cum1[:-1]) ** 2 / right_n
        gains = np.where(valid, sse_total - sse_left - sse_right, -np.inf)
        best = int(np.argmax(gains))
        threshold = (xs[best] + xs[best + 1]) / 2.0
        return float(gains[best]), float(threshold)


class Forest:
    """Fitted ensemble; prediction is the mean of tree outputs."""

    def __init__(self, trees: list[_Tree], params: ForestParams, seed: int, n_features: int):
        self.trees = trees
        self.params = params
        self.seed = seed
        self.n_features = n_features

    def predict_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise ValueError(f"expected (n, {self.n_features}) matrix, got {X.shape}")
        # centered accumulation keeps agreeing trees exact (constant target
        # must predict the constant bit-for-bit)
        first = self.trees[0].predict(X)
        acc = np.zeros(X.shape[0])
        for tree in self.trees[1:]:
            acc += tree.predict(X) - first
        return first + acc / len(self.trees)

    def predict(self, x) -> float:
        return float(self.predict_matrix(_as_matrix([x]))[0])

    def split_features(self) -> set[int]:
        used: set[int] = set()
        for tree in self.trees:
            used |= tree.split_features()
        return used


def _as_matrix(rows: Sequence) -> np.ndarray:
    vectors = []
    for row in rows:
        if hasattr(row, "as_array"):
            vectors.append(row.as_array())
        else:
            vectors.append(np.asarray(row, dtype=float))
    return np.stack(vectors)


def fit_forest(
    rows: Iterable[tuple[object, float]],
    params: ForestParams = ForestParams(),
    seed: int = 0,
) -> Forest:
    """Fit a forest on (feature vector, target) pairs.

    Targets must lie in [0, 1] (they are F1 scores downstream).  Each tree
    sees its own bootstrap sample and its own generator stream spawned from
    ``seed``, so refitting with identical inputs gives identical trees.
    """
    rows = list(rows)
    if len(rows) < 2:
        raise ValueError("need at least 2 rows to fit")
    X = _as_matrix([features for features, _ in rows])
    y = np.asarray([target for _, target in rows], dtype=float)
    if y.min() < 0.0 or y.max() > 1.0:
        raise ValueError("targets must lie in [0, 1]")
    n, d = X.shape
    if params.min_leaf < 1 or params.min_leaf > n:
        raise ValueError("min_leaf out of range")
    m = params.resolved_features_per_split(d)

    trees = []
    for child_seq in np.random.SeedSequence(seed).spawn(params.n_trees):
        rng = np.random.Generator(np.random.PCG64(child_seq))
        if params.bootstrap:
            idx = np.sort(rng.integers(0, n, size=n))
        else:
            idx = np.arange(n)
        builder = _TreeBuilder(X, y, params, m, rng)
        builder.build(idx, depth=0)
        trees.append(
            _Tree(builder.feature, builder.threshold, builder.left, builder.right, builder.value)
        )
    return Forest(trees, params, seed, d)
