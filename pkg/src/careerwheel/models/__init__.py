"""Three regressors behind one contract: fit, predict one row, persist."""

from __future__ import annotations

from dataclasses import dataclass, field

from careerwheel.models.base import DimensionMismatch, NumericalError
from careerwheel.models.forest import ForestModel, ForestParams, fit_forest
from careerwheel.models.linear import LinearModel, LinearParams, RankDeficient, fit_linear
from careerwheel.models.persist import (
    MalformedDocument,
    PersistError,
    UnknownVersion,
    load_model,
    save_model,
)
from careerwheel.models.svr import NotConverged, SvrModel, SvrParams, fit_svr

MODEL_KINDS = ("linear", "svr", "forest")

AnyModel = LinearModel | SvrModel | ForestModel


@dataclass(frozen=True)
class ModelParams:
    """Hyperparameters for all three model kinds in one bundle."""

    linear: LinearParams = field(default_factory=LinearParams)
    svr: SvrParams = field(default_factory=SvrParams)
    forest: ForestParams = field(default_factory=ForestParams)


def predict(model: AnyModel, x) -> float:
    """Crisp prediction for a single feature vector; no clipping happens here."""
    return model.predict_one(x)


def model_kind(model: AnyModel) -> str:
    return {LinearModel: "linear", SvrModel: "svr", ForestModel: "forest"}[type(model)]


__all__ = [
    "AnyModel",
    "DimensionMismatch",
    "ForestModel",
    "ForestParams",
    "LinearModel",
    "LinearParams",
    "MalformedDocument",
    "MODEL_KINDS",
    "ModelParams",
    "NotConverged",
    "NumericalError",
    "PersistError",
    "RankDeficient",
    "SvrModel",
    "SvrParams",
    "UnknownVersion",
    "fit_forest",
    "fit_linear",
    "fit_svr",
    "load_model",
    "model_kind",
    "predict",
    "save_model",
]
