"""Ordinary least squares with an optional ridge penalty on the slopes."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from careerwheel.models.base import (
    DimensionMismatch,
    NumericalError,
    as_matrix,
    as_vector,
    check_features,
    default_feature_labels,
)


class RankDeficient(NumericalError):
    def __init__(self, rank: int, needed: int):
        self.rank = rank
        self.needed = needed
        super().__init__(
            f"RankDeficient: design matrix rank {rank} < {needed}; "
            "drop collinear or constant features, or set ridge_lambda > 0"
        )


@dataclass(frozen=True)
class LinearParams:
    ridge_lambda: float = 0.0


@dataclass(frozen=True)
class LinearModel:
    intercept: float
    coefficients: np.ndarray
    feature_labels: tuple[str, ...]

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=np.float64)
        object.__setattr__(self, "coefficients", coefficients)
        if coefficients.size != len(self.feature_labels):
            raise ValueError("coefficients and feature_labels must have equal length")
        coefficients.flags.writeable = False

    def predict_one(self, x) -> float:
        x = check_features(x, self.coefficients.size)
        return float(self.intercept + x @ self.coefficients)

    def predict(self, X) -> np.ndarray:
        X = as_matrix(X)
        if X.shape[1] != self.coefficients.size:
            raise DimensionMismatch(self.coefficients.size, X.shape[1])
        return self.intercept + X @ self.coefficients


def fit_linear(
    X,
    y,
    ridge_lambda: float = 0.0,
    feature_labels: tuple[str, ...] | None = None,
) -> LinearModel:
    """Least-squares fit via an orthogonal-decomposition solve.

    With ridge_lambda > 0 the slope coefficients are penalized but the
    intercept is not (implemented by augmenting the design matrix with
    sqrt(lambda) rows that leave the intercept column zero).  A rank-
    deficient unpenalized fit raises instead of returning a minimum-norm
    answer: constant survey columns must fail loudly.
    """
    X = as_matrix(X)
    n, m = X.shape
    y = as_vector(y, n)
    if feature_labels is None:
        feature_labels = default_feature_labels(m)
    design = np.column_stack([np.ones(n), X])
    rhs = y
    if ridge_lambda > 0.0:
        penalty = np.sqrt(ridge_lambda) * np.eye(m)
        design = np.vstack([design, np.column_stack([np.zeros(m), penalty])])
        rhs = np.concatenate([y, np.zeros(m)])
    solution, _, rank, _ = np.linalg.lstsq(design, rhs, rcond=None)
    if ridge_lambda == 0.0 and rank < m + 1:
        raise RankDeficient(rank, m + 1)
    return LinearModel(
        intercept=float(solution[0]),
        coefficients=solution[1:],
        feature_labels=tuple(feature_labels),
    )
