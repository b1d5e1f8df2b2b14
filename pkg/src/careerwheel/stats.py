"""Descriptive statistics, Pearson correlation, and threshold feature selection."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from careerwheel.dataio import DataError, Dataset


class EmptyColumn(DataError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"EmptyColumn: {label!r} has no values")


class UnknownLabel(ValueError):
    def __init__(self, label: str):
        self.label = label
        super().__init__(f"UnknownLabel: {label!r}")


class NoFeaturesSelected(DataError):
    """Raised when no column clears the correlation threshold.

    Carries the realized target correlations so callers can surface them
    when suggesting a threshold adjustment.
    """

    def __init__(self, target: str, threshold: float, correlations: dict[str, float]):
        self.target = target
        self.threshold = threshold
        self.correlations = correlations
        realized = ", ".join(f"{k}={v:.4f}" for k, v in correlations.items())
        super().__init__(
            f"NoFeaturesSelected: no |r| > {threshold} against {target!r} ({realized})"
        )


@dataclass(frozen=True)
class ColumnStats:
    label: str
    count: int
    mean: float
    std: float  # sample std, divisor n - 1; NaN when count < 2
    min: float
    q25: float
    median: float
    q75: float
    max: float


@dataclass(frozen=True)
class DescriptiveStats:
    columns: tuple[ColumnStats, ...]

    def __getitem__(self, label: str) -> ColumnStats:
        for col in self.columns:
            if col.label == label:
                return col
        raise UnknownLabel(label)


@dataclass(frozen=True)
class CorrelationMatrix:
    """Pearson coefficients; undefined pairs (zero variance) are NaN, never 0."""

    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "values", values)
        values.flags.writeable = False

    def value(self, a: str, b: str) -> float:
        return float(self.values[self._index(a), self._index(b)])

    def target_correlations(self, target: str) -> dict[str, float]:
        """All non-target correlations against `target`, in label order."""
        t = self._index(target)
        return {
            label: float(self.values[i, t])
            for i, label in enumerate(self.labels)
            if label != target
        }

    def _index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabel(label) from None


@dataclass(frozen=True)
class FeatureSelection:
    target_label: str
    threshold: float
    selected_labels: tuple[str, ...]
    correlations: dict[str, float]


def describe(dataset: Dataset) -> DescriptiveStats:
    """Per-column count/mean/std/min/quartiles/max summary.

    Quantiles use linear interpolation between closest ranks.  Columns with
    missing-value support (GPA) are summarized over their present values and
    report their own count.
    """
    columns = []
    for i, label in enumerate(dataset.column_labels):
        values = dataset.rows[:, i]
        values = values[~np.isnan(values)]
        if values.size == 0:
            raise EmptyColumn(label)
        q25, median, q75 = np.quantile(values, [0.25, 0.5, 0.75], method="linear")
        std = float(np.std(values, ddof=1)) if values.size >= 2 else math.nan
        columns.append(
            ColumnStats(
                label=label,
                count=int(values.size),
                mean=float(np.mean(values)),
                std=std,
                min=float(np.min(values)),
                q25=float(q25),
                median=float(median),
                q75=float(q75),
                max=float(np.max(values)),
            )
        )
    return DescriptiveStats(columns=tuple(columns))


def _pairwise_pearson(x: np.ndarray, y: np.ndarray) -> float:
    """Product-moment coefficient over rows where both values are present."""
    ok = ~(np.isnan(x) | np.isnan(y))
    if ok.sum() < 2:
        return math.nan
    xs, ys = x[ok], y[ok]
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        return math.nan
    return float((dx @ dy) / math.sqrt(sxx * syy))


def pearson(dataset: Dataset) -> CorrelationMatrix:
    """Full m x m Pearson matrix.

    Pairs involving a zero-variance column (or with fewer than two complete
    observations) come back as NaN: an undefined correlation is surfaced,
    not coerced to zero.
    """
    m = dataset.m
    values = np.empty((m, m), dtype=np.float64)
    for i in range(m):
        values[i, i] = _pairwise_pearson(dataset.rows[:, i], dataset.rows[:, i])
        for j in range(i + 1, m):
            r = _pairwise_pearson(dataset.rows[:, i], dataset.rows[:, j])
            values[i, j] = r
            values[j, i] = r
    return CorrelationMatrix(labels=dataset.column_labels, values=values)


def select_features(
    corr: CorrelationMatrix, target: str, threshold: float
) -> FeatureSelection:
    """Labels whose |r| against the target strictly exceeds the threshold.

    Ordered by descending |r|; ties fall back to matrix (schema) order.
    Undefined correlations never qualify.
    """
    correlations = corr.target_correlations(target)
    ranked = sorted(
        (
            (label, r)
            for label, r in correlations.items()
            if not math.isnan(r) and abs(r) > threshold
        ),
        key=lambda item: (-abs(item[1]), corr.labels.index(item[0])),
    )
    if not ranked:
        raise NoFeaturesSelected(target, threshold, correlations)
    return FeatureSelection(
        target_label=target,
        threshold=threshold,
        selected_labels=tuple(label for label, _ in ranked),
        correlations=correlations,
    )
