"""Classifier families, their shared contract, and model persistence."""

from .classifier import (
    FittedPipeline,
    TrainedClassifier,
    make_fitted_pipeline,
    predict_proba,
    write_predictions_csv,
)
from .forest import (
    DecisionTree,
    ForestModel,
    ForestParams,
    entropy_impurity,
    gini_impurity,
    train_forest,
)
from .logistic import LogisticModel, logistic_objective, train_logistic
from .persist import FORMAT_VERSION, load_model, save_model

__all__ = [
    "DecisionTree",
    "FORMAT_VERSION",
    "FittedPipeline",
    "ForestModel",
    "ForestParams",
    "LogisticModel",
    "TrainedClassifier",
    "entropy_impurity",
    "gini_impurity",
    "load_model",
    "logistic_objective",
    "make_fitted_pipeline",
    "predict_proba",
    "save_model",
    "train_forest",
    "train_logistic",
    "write_predictions_csv",
]
