"""Shared model-contract pieces: errors and input checks."""

from __future__ import annotations

import numpy as np


class NumericalError(Exception):
    """Base class for training-time numerical failures."""


class DimensionMismatch(ValueError):
    def __init__(self, expected: int, got: int):
        self.expected = expected
        self.got = got
        super().__init__(f"DimensionMismatch: expected {expected} features, got {got}")


def as_matrix(X) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 1:
        X = X.reshape(-1, 1)
    if X.ndim != 2:
        raise ValueError("X must be a 2-d matrix")
    return X


def as_vector(y, n: int | None = None) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64).ravel()
    if n is not None and y.size != n:
        raise ValueError(f"y has {y.size} entries, expected {n}")
    return y


def check_features(x, n_features: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64).ravel()
    if x.size != n_features:
        raise DimensionMismatch(n_features, x.size)
    return x


def default_feature_labels(m: int) -> tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(m))
