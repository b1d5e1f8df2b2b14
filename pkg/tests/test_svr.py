import numpy as np
import pytest

from careerwheel.models import SvrModel, SvrParams, fit_svr
from careerwheel.models.svr import (
    dual_objective,
    kernel_matrix,
    kkt_violation,
    resolve_gamma,
)

from oracles import full_dual_weights, svr_dual_oracle, svr_pointwise_kkt


def random_instance(seed: int, n: int, m: int, noise: float = 0.7):
    rng = np.random.default_rng(seed)
    X = rng.uniform(1, 10, (n, m))
    y = 3.0 + X @ rng.normal(0, 0.4, m) + rng.normal(0, noise, n)
    return X, y


class TestFitSvr:
    def test_constant_target(self):
        rng = np.random.default_rng(0)
        X = rng.uniform(1, 10, (15, 3))
        model = fit_svr(X, np.full(15, 5.0))
        assert model.dual_weights.size == 0
        assert model.bias == pytest.approx(5.0, abs=1e-12)
        assert model.predict(X) == pytest.approx(np.full(15, 5.0), abs=model.epsilon)

    def test_exact_line_tube_containment(self):
        X = np.linspace(1, 10, 25).reshape(-1, 1)
        y = 0.4 * X[:, 0] + 2.0
        model = fit_svr(X, y, SvrParams(kernel="linear", epsilon=0.1))
        residuals = np.abs(y - model.predict(X))
        assert residuals.max() <= 0.1 + 1e-6

    @pytest.mark.parametrize("seed,kernel", [(1, "rbf"), (2, "linear"), (3, "rbf"), (4, "linear")])
    def test_dual_objective_matches_oracle(self, seed, kernel):
        X, y = random_instance(seed, n=14, m=2)
        params = SvrParams(kernel=kernel)
        model = fit_svr(X, y, params)
        K = kernel_matrix(kernel, model.gamma, X, X)
        beta = full_dual_weights(model, X)
        w_fit = dual_objective(K, y, beta, params.epsilon)
        _, w_star = svr_dual_oracle(K, y, params.c, params.epsilon, tol=1e-8)
        assert w_star - w_fit <= 1e-4
        assert w_fit - w_star <= 1e-6  # fitted value can never exceed the max

    def test_pointwise_kkt_conditions(self):
        for seed in (5, 6, 7):
            X, y = random_instance(seed, n=18, m=3)
            model = fit_svr(X, y)
            K = kernel_matrix("rbf", model.gamma, X, X)
            beta = full_dual_weights(model, X)
            assert svr_pointwise_kkt(K, y, beta, model.bias, model.c, model.epsilon) <= 1e-3
            assert kkt_violation(K, y, beta, model.c, model.epsilon) <= 1e-3

    def test_weight_invariants(self):
        X, y = random_instance(8, n=20, m=2, noise=1.5)
        model = fit_svr(X, y, SvrParams(c=0.5))
        assert np.all(np.abs(model.dual_weights) <= 0.5 + 1e-12)
        assert abs(model.dual_weights.sum()) <= 1e-6

    def test_cap_yields_flagged_usable_model(self):
        X, y = random_instance(9, n=20, m=2)
        model = fit_svr(X, y, SvrParams(max_passes=3))
        assert not model.converged
        assert np.isfinite(model.predict(X)).all()

    def test_determinism(self):
        X, y = random_instance(10, n=16, m=3)
        a = fit_svr(X, y)
        b = fit_svr(X, y)
        assert np.array_equal(a.support_vectors, b.support_vectors)
        assert np.array_equal(a.dual_weights, b.dual_weights)
        assert a.bias == b.bias

    def test_needs_two_samples(self):
        with pytest.raises(ValueError):
            fit_svr([[1.0]], [2.0])

    def test_param_validation(self):
        with pytest.raises(ValueError):
            SvrParams(c=0.0)
        with pytest.raises(ValueError):
            SvrParams(epsilon=-0.1)
        with pytest.raises(ValueError):
            SvrParams(kernel="poly")


class TestGammaScale:
    def test_scale_formula(self):
        X = np.array([[1.0, 2.0], [3.0, 4.0], [5.0, 9.0]])
        assert resolve_gamma(X, "scale") == pytest.approx(1.0 / (2 * X.var()))

    def test_degenerate_variance(self):
        assert resolve_gamma(np.full((4, 3), 2.0), "scale") == 1.0

    def test_explicit_value_passthrough(self):
        assert resolve_gamma(np.ones((2, 2)), 0.25) == 0.25


class TestPredict:
    def test_single_support_vector_expansion(self):
        sv = np.array([[2.0, 3.0]])
        model = SvrModel(
            support_vectors=sv,
            dual_weights=np.array([0.7]),
            bias=1.5,
            c=1.0,
            epsilon=0.1,
            kernel="rbf",
            gamma=0.5,
            feature_labels=("a", "b"),
        )
        # K(sv, sv) = 1, so the prediction at the support vector is w + bias
        assert model.predict_one([2.0, 3.0]) == pytest.approx(0.7 + 1.5, abs=1e-15)

    def test_rbf_kernel_values(self):
        A = np.array([[0.0, 0.0]])
        B = np.array([[3.0, 4.0]])
        K = kernel_matrix("rbf", 0.1, A, B)
        assert K[0, 0] == pytest.approx(np.exp(-0.1 * 25.0), rel=1e-15)
