import numpy as np
import pytest

from careerwheel.models import ForestModel, ForestParams, fit_forest, save_model
from careerwheel.models.forest import RegressionTree, derive_seed


def make_data(seed: int = 3, n: int = 60, m: int = 4):
    rng = np.random.default_rng(seed)
    X = rng.uniform(1, 10, (n, m))
    y = 1.0 + X @ np.linspace(0.3, 0.05, m) + rng.normal(0, 0.5, n)
    return X, y


def leaf_stump(value: float) -> RegressionTree:
    return RegressionTree(
        feature=np.array([-1]),
        threshold=np.array([np.nan]),
        left=np.array([-1]),
        right=np.array([-1]),
        value=np.array([value]),
    )


class TestFitForest:
    def test_single_tree_memorizes_unique_rows(self):
        X, y = make_data()
        model = fit_forest(X, y, ForestParams(n_trees=1, bootstrap=False), seed=5)
        assert float(np.mean((model.predict(X) - y) ** 2)) == 0.0

    def test_same_seed_bit_exact(self):
        X, y = make_data()
        a = fit_forest(X, y, ForestParams(n_trees=20), seed=11)
        b = fit_forest(X, y, ForestParams(n_trees=20), seed=11)
        assert save_model(a) == save_model(b)
        assert np.array_equal(a.predict(X), b.predict(X))

    def test_thread_count_never_changes_result(self):
        X, y = make_data()
        serial = fit_forest(X, y, ForestParams(n_trees=24), seed=7, n_jobs=1)
        threaded = fit_forest(X, y, ForestParams(n_trees=24), seed=7, n_jobs=4)
        assert save_model(serial) == save_model(threaded)

    def test_constant_target_grows_no_splits(self):
        X, _ = make_data()
        model = fit_forest(X, np.full(60, 4.0), ForestParams(n_trees=5), seed=1)
        for tree in model.trees:
            assert tree.feature.size == 1 and tree.feature[0] == -1
            assert tree.value[0] == 4.0
        assert model.predict_one(X[0]) == 4.0

    def test_prediction_is_mean_of_trees(self):
        X, y = make_data()
        model = fit_forest(X, y, ForestParams(n_trees=12), seed=2)
        per_tree = np.array([tree.predict(X[:10]) for tree in model.trees])
        assert model.predict(X[:10]) == pytest.approx(per_tree.mean(axis=0), abs=1e-12)

    def test_predictions_bounded_by_training_targets(self):
        X, y = make_data(n=120)
        model = fit_forest(X, y, seed=9)
        rng = np.random.default_rng(1)
        probe = rng.uniform(-50, 50, (40, 4))
        predictions = model.predict(probe)
        assert predictions.min() >= y.min() - 1e-12
        assert predictions.max() <= y.max() + 1e-12

    def test_max_depth_limits_tree(self):
        X, y = make_data()
        model = fit_forest(X, y, ForestParams(n_trees=3, max_depth=1), seed=4)
        for tree in model.trees:
            assert tree.feature.size <= 3  # root plus two leaves at most

    def test_min_samples_split_blocks_splitting(self):
        X, y = make_data(n=30)
        model = fit_forest(X, y, ForestParams(n_trees=2, min_samples_split=31), seed=4)
        for tree in model.trees:
            assert tree.feature.size == 1

    def test_max_features_subsampling_is_deterministic(self):
        X, y = make_data()
        params = ForestParams(n_trees=8, max_features=2)
        a = fit_forest(X, y, params, seed=13)
        b = fit_forest(X, y, params, seed=13)
        assert save_model(a) == save_model(b)

    def test_distinct_tree_seeds(self):
        assert derive_seed(5, 0).generate_state(4).tolist() != derive_seed(5, 1).generate_state(4).tolist()

    def test_param_validation(self):
        with pytest.raises(ValueError):
            ForestParams(n_trees=0)
        with pytest.raises(ValueError):
            ForestParams(min_samples_split=1)


class TestSplitGeometry:
    def test_split_threshold_between_values(self):
        # one feature with two values: threshold must sit strictly below the
        # upper value so both children receive their rows
        X = np.array([[1.0], [1.0], [2.0], [2.0]])
        y = np.array([0.0, 0.0, 10.0, 10.0])
        model = fit_forest(X, y, ForestParams(n_trees=1, bootstrap=False), seed=0)
        tree = model.trees[0]
        assert tree.feature[0] == 0
        assert 1.0 <= tree.threshold[0] < 2.0
        assert model.predict_one([1.0]) == 0.0
        assert model.predict_one([2.0]) == 10.0

    def test_tie_breaks_to_lowest_feature(self):
        # both features separate the targets equally well; feature 0 must win
        X = np.array([[1.0, 1.0], [1.0, 1.0], [2.0, 2.0], [2.0, 2.0]])
        y = np.array([0.0, 0.0, 1.0, 1.0])
        model = fit_forest(X, y, ForestParams(n_trees=1, bootstrap=False), seed=0)
        assert model.trees[0].feature[0] == 0


class TestPredictContract:
    def test_mean_of_identical_stumps(self):
        model = ForestModel(
            trees=(leaf_stump(4.0), leaf_stump(4.0), leaf_stump(4.0)),
            n_trees=3,
            max_depth=None,
            min_samples_split=2,
            bootstrap=True,
            max_features=None,
            seed=0,
            feature_labels=("a", "b"),
        )
        assert model.predict_one([1.0, 2.0]) == 4.0
