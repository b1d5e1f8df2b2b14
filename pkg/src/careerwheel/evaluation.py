"""Regression-error and classification metric bundles, plus the full evaluation flow.

The flow mirrors the assessment procedure end to end: split the cohort,
train all three regressors on the train side, score them on the test side,
keep the lowest-error model, fuzzify both the actual and the predicted
test targets, and grade the resulting linguistic labels.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from careerwheel import dataio, fuzzy, stats
from careerwheel.config import RunConfig
from careerwheel.models import (
    AnyModel,
    MODEL_KINDS,
    fit_forest,
    fit_linear,
    fit_svr,
    save_model,
)

MODEL_DISPLAY_NAMES = {
    "linear": "Linear Regression",
    "svr": "Support Vector Regression",
    "forest": "Random Forest Regression",
}

REPORT_FORMAT_VERSION = "1"


class LengthMismatch(ValueError):
    def __init__(self, n_true: int, n_pred: int):
        super().__init__(f"LengthMismatch: {n_true} true vs {n_pred} predicted values")


class Empty(ValueError):
    def __init__(self):
        super().__init__("Empty: metrics need at least one sample")


@dataclass(frozen=True)
class RegressionReport:
    mae: float
    mse: float
    rmse: float
    model_kind: str
    n_test: int


@dataclass(frozen=True)
class ClassScores:
    precision: float
    recall: float
    f1: float


@dataclass(frozen=True)
class ConfusionMatrix:
    term_order: tuple[str, ...]
    counts: np.ndarray  # rows = true term, columns = predicted term

    def __post_init__(self):
        counts = np.asarray(self.counts, dtype=np.int64)
        object.__setattr__(self, "counts", counts)
        counts.flags.writeable = False

    @property
    def total(self) -> int:
        return int(self.counts.sum())


@dataclass(frozen=True)
class ClassificationReport:
    accuracy: float
    per_class: dict[str, ClassScores]
    macro: ClassScores
    positive_class_view: tuple[str, ClassScores]


def regression_metrics(y_true, y_pred, model_kind: str = "") -> RegressionReport:
    """MAE, MSE and RMSE of a prediction vector."""
    y_true = np.asarray(y_true, dtype=np.float64).ravel()
    y_pred = np.asarray(y_pred, dtype=np.float64).ravel()
    if y_true.size != y_pred.size:
        raise LengthMismatch(y_true.size, y_pred.size)
    if y_true.size == 0:
        raise Empty()
    err = y_true - y_pred
    mse = float(np.mean(err * err))
    return RegressionReport(
        mae=float(np.mean(np.abs(err))),
        mse=mse,
        rmse=math.sqrt(mse),
        model_kind=model_kind,
        n_test=int(y_true.size),
    )


def confusion_matrix(true_terms, pred_terms, term_order) -> ConfusionMatrix:
    term_order = tuple(term_order)
    index = {term: i for i, term in enumerate(term_order)}
    true_terms = list(true_terms)
    pred_terms = list(pred_terms)
    if len(true_terms) != len(pred_terms):
        raise LengthMismatch(len(true_terms), len(pred_terms))
    if not true_terms:
        raise Empty()
    counts = np.zeros((len(term_order), len(term_order)), dtype=np.int64)
    for t, p in zip(true_terms, pred_terms):
        if t not in index:
            raise fuzzy.UnknownTerm(t)
        if p not in index:
            raise fuzzy.UnknownTerm(p)
        counts[index[t], index[p]] += 1
    return ConfusionMatrix(term_order=term_order, counts=counts)


def _one_vs_rest(counts: np.ndarray, k: int) -> ClassScores:
    tp = float(counts[k, k])
    fp = float(counts[:, k].sum() - counts[k, k])
    fn = float(counts[k, :].sum() - counts[k, k])
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    f1 = (
        2.0 * precision * recall / (precision + recall)
        if precision + recall > 0
        else 0.0
    )
    return ClassScores(precision=precision, recall=recall, f1=f1)


def classification_metrics(
    true_terms, pred_terms, term_order, positive_class: str = "High"
) -> ClassificationReport:
    """Accuracy plus one-vs-rest precision/recall/F1 per class.

    The macro triple is the unweighted mean over all classes in term_order;
    the positive-class view repeats one class's numbers to mirror a
    single-row report.  Zero-denominator precision or recall is 0.
    """
    cm = confusion_matrix(true_terms, pred_terms, term_order)
    if positive_class not in cm.term_order:
        raise fuzzy.UnknownTerm(positive_class)
    per_class = {
        term: _one_vs_rest(cm.counts, k) for k, term in enumerate(cm.term_order)
    }
    scores = list(per_class.values())
    macro = ClassScores(
        precision=float(np.mean([s.precision for s in scores])),
        recall=float(np.mean([s.recall for s in scores])),
        f1=float(np.mean([s.f1 for s in scores])),
    )
    return ClassificationReport(
        accuracy=float(np.trace(cm.counts) / cm.total),
        per_class=per_class,
        macro=macro,
        positive_class_view=(positive_class, per_class[positive_class]),
    )


@dataclass(frozen=True)
class PipelineResult:
    target_label: str
    feature_labels: tuple[str, ...]
    selection: stats.FeatureSelection | None  # None when features were pinned
    split: dataio.TrainTestSplit
    regression: dict[str, RegressionReport]
    winner_kind: str
    winner_model: AnyModel
    winner_document: str
    confusion: ConfusionMatrix
    classification: ClassificationReport
    partition: fuzzy.FuzzyPartition
    positive_class: str


def _pick_winner(regression: dict[str, RegressionReport]) -> str:
    """Lowest RMSE wins; ties fall to lowest MAE, then to the fixed kind order."""
    order = {kind: i for i, kind in enumerate(MODEL_KINDS)}
    return min(
        regression,
        key=lambda kind: (regression[kind].rmse, regression[kind].mae, order[kind]),
    )


def evaluate_pipeline(
    dataset: dataio.Dataset, config: RunConfig, n_jobs: int = 1
) -> PipelineResult:
    """Run the whole assessment flow on one cohort under one configuration."""
    ds = (
        dataset
        if dataset.target_label == config.target_label
        else dataset.with_target(config.target_label)
    )
    selection = None
    if config.feature_labels is not None:
        features = tuple(config.feature_labels)
        for label in features:
            ds.column_index(label)  # fail early on unknown labels
    else:
        # Correlations are taken over the full cohort before splitting,
        # matching the survey-analysis order of operations.
        selection = stats.select_features(
            stats.pearson(ds), ds.target_label, config.correlation_threshold
        )
        features = selection.selected_labels

    parts = dataio.split(ds, config.test_fraction, config.seed)
    X, y = ds.design(features)
    train = np.array(parts.train_indices)
    test = np.array(parts.test_indices)
    X_train, y_train = X[train], y[train]
    X_test, y_test = X[test], y[test]

    models: dict[str, AnyModel] = {
        "linear": fit_linear(
            X_train, y_train, config.params.linear.ridge_lambda, features
        ),
        "svr": fit_svr(X_train, y_train, config.params.svr, features),
        "forest": fit_forest(
            X_train,
            y_train,
            config.params.forest,
            seed=config.seed,
            feature_labels=features,
            n_jobs=n_jobs,
        ),
    }
    regression = {
        kind: regression_metrics(y_test, model.predict(X_test), kind)
        for kind, model in models.items()
    }
    winner_kind = _pick_winner(regression)
    winner = models[winner_kind]

    true_terms = [fuzzy.fuzzify(config.partition, v).chosen_term for v in y_test]
    pred_terms = [
        fuzzy.fuzzify(config.partition, v).chosen_term
        for v in winner.predict(X_test)
    ]
    term_order = config.partition.labels()
    return PipelineResult(
        target_label=ds.target_label,
        feature_labels=features,
        selection=selection,
        split=parts,
        regression=regression,
        winner_kind=winner_kind,
        winner_model=winner,
        winner_document=save_model(winner),
        confusion=confusion_matrix(true_terms, pred_terms, term_order),
        classification=classification_metrics(
            true_terms, pred_terms, term_order, config.positive_class
        ),
        partition=config.partition,
        positive_class=config.positive_class,
    )


def _scores_payload(scores: ClassScores) -> dict:
    return {"precision": scores.precision, "recall": scores.recall, "f1": scores.f1}


def report_document(result: PipelineResult) -> str:
    """Structured-report serialization (same document family as models)."""
    doc = {
        "format_version": REPORT_FORMAT_VERSION,
        "kind": "evaluation_report",
        "target": result.target_label,
        "features": {
            "mode": "threshold" if result.selection is not None else "explicit",
            "threshold": result.selection.threshold if result.selection else None,
            "selected": list(result.feature_labels),
            "correlations": (
                {k: v for k, v in result.selection.correlations.items()}
                if result.selection
                else None
            ),
        },
        "split": {
            "seed": result.split.seed,
            "test_fraction": result.split.test_fraction,
            "n_train": len(result.split.train_indices),
            "n_test": len(result.split.test_indices),
        },
        "models": {
            kind: {
                "mae": report.mae,
                "mse": report.mse,
                "rmse": report.rmse,
            }
            for kind, report in result.regression.items()
        },
        "winner": result.winner_kind,
        "classification": {
            "accuracy": result.classification.accuracy,
            "per_class": {
                term: _scores_payload(scores)
                for term, scores in result.classification.per_class.items()
            },
            "macro": _scores_payload(result.classification.macro),
            "positive_class": {
                "label": result.classification.positive_class_view[0],
                **_scores_payload(result.classification.positive_class_view[1]),
            },
            "confusion": {
                "order": list(result.confusion.term_order),
                "counts": result.confusion.counts.tolist(),
            },
        },
        "partition": {
            "domain": list(result.partition.domain),
            "terms": [
                [label, tri.a, tri.b, tri.c] for label, tri in result.partition.terms
            ],
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def render_tables(result: PipelineResult) -> str:
    """Human-readable error and score tables."""
    lines = []
    n_test = len(result.split.test_indices)
    lines.append(f"Regression error on the test split (n={n_test})")
    lines.append(f"{'Model':<28}{'MAE':>10}{'MSE':>10}{'RMSE':>10}")
    for kind in MODEL_KINDS:
        report = result.regression[kind]
        lines.append(
            f"{MODEL_DISPLAY_NAMES[kind]:<28}"
            f"{report.mae:>10.4f}{report.mse:>10.4f}{report.rmse:>10.4f}"
        )
    lines.append(f"Selected model: {MODEL_DISPLAY_NAMES[result.winner_kind]}")
    lines.append("")
    lines.append(f"Fuzzified readiness classification (n={result.confusion.total})")
    lines.append(f"Accuracy: {result.classification.accuracy:.4f}")
    lines.append(f"{'Class':<12}{'Precision':>11}{'Recall':>10}{'F1':>10}{'Support':>10}")
    support = result.confusion.counts.sum(axis=1)
    for k, term in enumerate(result.confusion.term_order):
        scores = result.classification.per_class[term]
        lines.append(
            f"{term:<12}{scores.precision:>11.4f}{scores.recall:>10.4f}"
            f"{scores.f1:>10.4f}{int(support[k]):>10}"
        )
    macro = result.classification.macro
    lines.append(
        f"{'macro':<12}{macro.precision:>11.4f}{macro.recall:>10.4f}"
        f"{macro.f1:>10.4f}{result.confusion.total:>10}"
    )
    label, scores = result.classification.positive_class_view
    lines.append(
        f"Positive class {label!r}: precision={scores.precision:.4f} "
        f"recall={scores.recall:.4f} f1={scores.f1:.4f}"
    )
    return "\n".join(lines) + "\n"
