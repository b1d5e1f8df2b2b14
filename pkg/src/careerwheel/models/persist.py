"""Versioned text documents for fitted models.

Documents are JSON with a fixed header (format_version, model_kind,
feature_labels) followed by the model-specific numeric payload.  Floats are
written at full round-trip precision, so load(save(m)) predicts bit-
identically to m.
"""

from __future__ import annotations

import json
import math

import numpy as np

from careerwheel.models.forest import ForestModel, RegressionTree
from careerwheel.models.linear import LinearModel
from careerwheel.models.svr import SvrModel

FORMAT_VERSION = "1"


class PersistError(Exception):
    pass


class UnknownVersion(PersistError):
    def __init__(self, version):
        self.version = version
        super().__init__(f"UnknownVersion: {version!r} (supported: {FORMAT_VERSION})")


class MalformedDocument(PersistError):
    pass


def _tree_payload(tree: RegressionTree) -> dict:
    return {
        "feature": tree.feature.tolist(),
        "threshold": [None if math.isnan(t) else t for t in tree.threshold],
        "left": tree.left.tolist(),
        "right": tree.right.tolist(),
        "value": tree.value.tolist(),
    }


def _tree_from_payload(doc: dict) -> RegressionTree:
    return RegressionTree(
        feature=np.array(doc["feature"], dtype=np.int64),
        threshold=np.array(
            [math.nan if t is None else t for t in doc["threshold"]], dtype=np.float64
        ),
        left=np.array(doc["left"], dtype=np.int64),
        right=np.array(doc["right"], dtype=np.int64),
        value=np.array(doc["value"], dtype=np.float64),
    )


def save_model(model) -> str:
    """Serialize a fitted model to its versioned text document."""
    if isinstance(model, LinearModel):
        kind = "linear"
        payload = {
            "intercept": model.intercept,
            "coefficients": model.coefficients.tolist(),
        }
    elif isinstance(model, SvrModel):
        kind = "svr"
        payload = {
            "support_vectors": model.support_vectors.tolist(),
            "dual_weights": model.dual_weights.tolist(),
            "bias": model.bias,
            "c": model.c,
            "epsilon": model.epsilon,
            "kernel": model.kernel,
            "gamma": model.gamma,
            "converged": model.converged,
        }
    elif isinstance(model, ForestModel):
        kind = "forest"
        payload = {
            "n_trees": model.n_trees,
            "max_depth": model.max_depth,
            "min_samples_split": model.min_samples_split,
            "bootstrap": model.bootstrap,
            "max_features": model.max_features,
            "seed": model.seed,
            "trees": [_tree_payload(tree) for tree in model.trees],
        }
    else:
        raise TypeError(f"cannot persist {type(model).__name__}")
    doc = {
        "format_version": FORMAT_VERSION,
        "model_kind": kind,
        "feature_labels": list(model.feature_labels),
        "payload": payload,
    }
    return json.dumps(doc, indent=2) + "\n"


def load_model(text: str):
    """Parse a model document back into a fitted model."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedDocument(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDocument("document root must be an object")
    if "format_version" not in doc:
        raise MalformedDocument("missing format_version")
    if doc["format_version"] != FORMAT_VERSION:
        raise UnknownVersion(doc["format_version"])
    try:
        kind = doc["model_kind"]
        labels = tuple(doc["feature_labels"])
        payload = doc["payload"]
        if kind == "linear":
            return LinearModel(
                intercept=float(payload["intercept"]),
                coefficients=np.array(payload["coefficients"], dtype=np.float64),
                feature_labels=labels,
            )
        if kind == "svr":
            return SvrModel(
                support_vectors=np.array(
                    payload["support_vectors"], dtype=np.float64
                ).reshape(-1, len(labels)),
                dual_weights=np.array(payload["dual_weights"], dtype=np.float64),
                bias=float(payload["bias"]),
                c=float(payload["c"]),
                epsilon=float(payload["epsilon"]),
                kernel=payload["kernel"],
                gamma=None if payload["gamma"] is None else float(payload["gamma"]),
                feature_labels=labels,
                converged=bool(payload["converged"]),
            )
        if kind == "forest":
            return ForestModel(
                trees=tuple(_tree_from_payload(t) for t in payload["trees"]),
                n_trees=int(payload["n_trees"]),
                max_depth=payload["max_depth"],
                min_samples_split=int(payload["min_samples_split"]),
                bootstrap=bool(payload["bootstrap"]),
                max_features=payload["max_features"],
                seed=int(payload["seed"]),
                feature_labels=labels,
            )
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedDocument(f"bad payload: {exc}") from None
    raise MalformedDocument(f"unknown model_kind {kind!r}")
