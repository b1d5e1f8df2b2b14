"""Random forest regression built from exhaustive-search CART trees.

Trees are grown on bootstrap resamples and aggregated by averaging leaf
means.  Every source of randomness flows from one master seed through a
fixed per-tree derivation, so training is reproducible regardless of how
many worker threads build the trees.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from careerwheel.models.base import (
    as_matrix,
    as_vector,
    check_features,
    default_feature_labels,
)

_LEAF = -1


@dataclass(frozen=True)
class ForestParams:
    n_trees: int = 100
    max_depth: int | None = None
    min_samples_split: int = 2
    bootstrap: bool = True
    max_features: int | None = None  # None = all features at every split

    def __post_init__(self):
        if self.n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        if self.min_samples_split < 2:
            raise ValueError("min_samples_split must be >= 2")


@dataclass(frozen=True)
class RegressionTree:
    """CART tree flattened into parallel node arrays (feature -1 marks a leaf)."""

    feature: np.ndarray
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray  # mean of the training targets reaching the node

    def __post_init__(self):
        for name in ("feature", "left", "right"):
            arr = np.asarray(getattr(self, name), dtype=np.int64)
            object.__setattr__(self, name, arr)
            arr.flags.writeable = False
        for name in ("threshold", "value"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            object.__setattr__(self, name, arr)
            arr.flags.writeable = False

    def predict_one(self, x: np.ndarray) -> float:
        node = 0
        while self.feature[node] != _LEAF:
            if x[self.feature[node]] <= self.threshold[node]:
                node = self.left[node]
            else:
                node = self.right[node]
        return float(self.value[node])

    def predict(self, X: np.ndarray) -> np.ndarray:
        """Route all rows level by level instead of one Python descent per row."""
        nodes = np.zeros(X.shape[0], dtype=np.int64)
        rows = np.nonzero(self.feature[nodes] != _LEAF)[0]
        while rows.size:
            at = nodes[rows]
            go_left = X[rows, self.feature[at]] <= self.threshold[at]
            nodes[rows] = np.where(go_left, self.left[at], self.right[at])
            rows = rows[self.feature[nodes[rows]] != _LEAF]
        return self.value[nodes]


def _best_split(X: np.ndarray, y: np.ndarray, features: np.ndarray):
    """Exhaustive search over features and midpoint thresholds, minimizing child SSE.

    Returns (feature, threshold) or None.  Candidate thresholds sit between
    consecutive distinct sorted values; prefix sums evaluate every candidate
    of every feature in one vectorized pass.  Scanning the cost matrix in
    column-major order makes ties fall to the lowest feature index, then the
    lowest threshold.
    """
    n = y.size
    cols = X[:, features]
    order = np.argsort(cols, axis=0, kind="stable")
    xs = np.take_along_axis(cols, order, axis=0)
    valid = xs[:-1] != xs[1:]
    if not valid.any():
        return None
    ys = y[order]
    s1 = np.cumsum(ys, axis=0)
    s2 = np.cumsum(ys * ys, axis=0)
    nl = np.arange(1, n, dtype=np.float64)[:, None]
    sl1, sl2 = s1[:-1], s2[:-1]
    sse_left = sl2 - sl1 * sl1 / nl
    sse_right = (s2[-1] - sl2) - (s1[-1] - sl1) ** 2 / (n - nl)
    cost = np.maximum(sse_left, 0.0) + np.maximum(sse_right, 0.0)
    cost[~valid] = np.inf
    flat = int(np.argmin(cost.ravel(order="F")))
    col, pos = divmod(flat, n - 1)
    lo, hi = xs[pos, col], xs[pos + 1, col]
    threshold = (lo + hi) / 2.0
    if threshold >= hi:  # midpoint rounded up between adjacent floats
        threshold = lo
    return int(features[col]), float(threshold)


def _grow_tree(
    X: np.ndarray,
    y: np.ndarray,
    params: ForestParams,
    rng: np.random.Generator,
) -> RegressionTree:
    m = X.shape[1]
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[float] = []

    def new_node() -> int:
        feature.append(_LEAF)
        threshold.append(np.nan)
        left.append(_LEAF)
        right.append(_LEAF)
        value.append(np.nan)
        return len(feature) - 1

    root = new_node()
    stack = [(np.arange(y.size), 0, root)]
    while stack:
        idx, depth, node = stack.pop()
        ys = y[idx]
        value[node] = float(ys.mean())
        if (
            idx.size < params.min_samples_split
            or (params.max_depth is not None and depth >= params.max_depth)
            or np.all(ys == ys[0])
        ):
            continue
        if params.max_features is not None and params.max_features < m:
            candidates = np.sort(rng.permutation(m)[: params.max_features])
        else:
            candidates = np.arange(m)
        found = _best_split(X[idx], ys, candidates)
        if found is None:
            continue
        f, t = found
        feature[node] = f
        threshold[node] = t
        goes_left = X[idx, f] <= t
        left_id = new_node()
        right_id = new_node()
        left[node] = left_id
        right[node] = right_id
        stack.append((idx[~goes_left], depth + 1, right_id))
        stack.append((idx[goes_left], depth + 1, left_id))
    return RegressionTree(
        feature=np.array(feature),
        threshold=np.array(threshold),
        left=np.array(left),
        right=np.array(right),
        value=np.array(value),
    )


def derive_seed(seed: int, k: int) -> np.random.SeedSequence:
    """Fixed mixing of the master seed with the tree index."""
    return np.random.SeedSequence(seed, spawn_key=(k,))


@dataclass(frozen=True)
class ForestModel:
    trees: tuple[RegressionTree, ...]
    n_trees: int
    max_depth: int | None
    min_samples_split: int
    bootstrap: bool
    max_features: int | None
    seed: int
    feature_labels: tuple[str, ...]

    def predict_one(self, x) -> float:
        x = check_features(x, len(self.feature_labels))
        return float(np.mean([tree.predict_one(x) for tree in self.trees]))

    def predict(self, X) -> np.ndarray:
        X = as_matrix(X)
        if X.shape[1] != len(self.feature_labels):
            check_features(X[0], len(self.feature_labels))
        return np.mean([tree.predict(X) for tree in self.trees], axis=0)


def fit_forest(
    X,
    y,
    params: ForestParams | None = None,
    seed: int = 0,
    feature_labels: tuple[str, ...] | None = None,
    n_jobs: int = 1,
) -> ForestModel:
    """Train a bootstrap-aggregated forest of CART regression trees.

    Tree k draws its bootstrap sample and any feature subsets from the
    generator seeded by derive_seed(seed, k); n_jobs only controls how many
    threads build trees and never changes the result.
    """
    if params is None:
        params = ForestParams()
    X = as_matrix(X)
    n, m = X.shape
    y = as_vector(y, n)
    if n < 2:
        raise ValueError("fit_forest needs at least 2 samples")
    if feature_labels is None:
        feature_labels = default_feature_labels(m)

    def build(k: int) -> RegressionTree:
        rng = np.random.default_rng(derive_seed(seed, k))
        if params.bootstrap:
            idx = rng.integers(0, n, size=n)
            return _grow_tree(X[idx], y[idx], params, rng)
        return _grow_tree(X, y, params, rng)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            trees = tuple(pool.map(build, range(params.n_trees)))
    else:
        trees = tuple(build(k) for k in range(params.n_trees))
    return ForestModel(
        trees=trees,
        n_trees=params.n_trees,
        max_depth=params.max_depth,
        min_samples_split=params.min_samples_split,
        bootstrap=params.bootstrap,
        max_features=params.max_features,
        seed=seed,
        feature_labels=tuple(feature_labels),
    )
