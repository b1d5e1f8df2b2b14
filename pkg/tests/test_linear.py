import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from careerwheel.models import DimensionMismatch, LinearModel, RankDeficient, fit_linear

from oracles import ols_normal_equations


class TestFitLinear:
    def test_exact_line(self):
        model = fit_linear([[1.0], [2.0], [3.0]], [3.0, 5.0, 7.0])
        assert model.intercept == pytest.approx(1.0, abs=1e-12)
        assert model.coefficients[0] == pytest.approx(2.0, abs=1e-12)

    def test_duplicated_columns_rank_deficient(self):
        X = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [4.0, 4.0]])
        with pytest.raises(RankDeficient):
            fit_linear(X, [1.0, 2.0, 3.0, 4.0])

    def test_constant_column_rank_deficient(self):
        X = np.column_stack([np.arange(5.0), np.full(5, 3.0)])
        with pytest.raises(RankDeficient):
            fit_linear(X, np.arange(5.0))

    def test_too_few_rows_rank_deficient(self):
        with pytest.raises(RankDeficient):
            fit_linear(np.ones((2, 3)) + np.eye(3)[:2], [1.0, 2.0])

    def test_matches_normal_equation_oracle(self):
        rng = np.random.default_rng(17)
        X = rng.uniform(1, 10, (50, 4))
        y = 2.0 + X @ np.array([0.4, -0.3, 0.2, 0.7]) + rng.normal(0, 0.5, 50)
        model = fit_linear(X, y)
        icpt, slopes = ols_normal_equations(X, y)
        assert model.intercept == pytest.approx(icpt, rel=1e-8)
        assert model.coefficients == pytest.approx(slopes, rel=1e-8)

    def test_residual_orthogonality(self):
        rng = np.random.default_rng(5)
        X = rng.uniform(0, 5, (40, 3))
        y = rng.normal(2, 1, 40)
        model = fit_linear(X, y)
        resid = y - model.predict(X)
        design = np.column_stack([np.ones(40), X])
        assert np.max(np.abs(design.T @ resid)) < 1e-8

    @settings(max_examples=30)
    @given(
        a=st.floats(min_value=-5, max_value=5).filter(lambda v: abs(v) > 1e-3),
        b=st.floats(min_value=-20, max_value=20),
    )
    def test_target_affine_equivariance(self, a, b):
        rng = np.random.default_rng(23)
        X = rng.uniform(1, 10, (30, 2))
        y = rng.normal(5, 2, 30)
        base = fit_linear(X, y).predict(X)
        scaled = fit_linear(X, a * y + b).predict(X)
        assert scaled == pytest.approx(a * base + b, abs=1e-10 * max(1.0, abs(a) * 20))

    def test_ridge_accepts_collinear_design(self):
        X = np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0], [4.0, 4.0]])
        model = fit_linear(X, [1.0, 2.0, 3.0, 4.0], ridge_lambda=1e-6)
        assert np.isfinite(model.coefficients).all()

    def test_ridge_leaves_intercept_unpenalized(self):
        rng = np.random.default_rng(2)
        X = rng.uniform(1, 10, (60, 2))
        y = np.full(60, 7.0)
        model = fit_linear(X, y, ridge_lambda=1e9)
        assert model.coefficients == pytest.approx([0.0, 0.0], abs=1e-6)
        assert model.intercept == pytest.approx(7.0, abs=1e-6)


class TestPredict:
    def test_arithmetic(self):
        model = LinearModel(intercept=1.0, coefficients=np.array([2.0]), feature_labels=("X1",))
        assert model.predict_one([3.0]) == 7.0

    def test_dimension_mismatch(self):
        model = LinearModel(
            intercept=0.0, coefficients=np.array([1.0, 2.0]), feature_labels=("a", "b")
        )
        with pytest.raises(DimensionMismatch):
            model.predict_one([1.0])
        with pytest.raises(DimensionMismatch):
            model.predict(np.ones((3, 3)))
