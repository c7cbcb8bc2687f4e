"""Model files: JSON with a format version, pipeline, and sparse weights.

Floats are serialized through ``json``'s shortest-round-trip encoding, so a
loaded model reproduces predictions bit-exactly.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import ModelFormatError
from ..features import TfIdfModel, Vocabulary
from ..textprep import CleaningConfig
from .classifier import TrainedClassifier, make_fitted_pipeline
from .forest import DecisionTree, ForestModel, ForestParams
from .logistic import LogisticModel

FORMAT_VERSION = 1


def _classifier_payload(model) -> dict:
    if isinstance(model, LogisticModel):
        nz = np.nonzero(model.weights)[0]
        return {
            "kind": "logistic",
            "dimension": model.dimension,
            "weights": [[int(i), float(model.weights[i])] for i in nz],
            "bias": model.bias,
            "penalty": model.penalty,
            "C": model.C,
            "trained_on": model.trained_on,
            "converged": model.converged,
        }
    if isinstance(model, ForestModel):
        return {
            "kind": "forest",
            "n_features": model.n_features,
            "params": model.params.to_payload(),
            "seed": model.seed,
            "trained_on": model.trained_on,
            "trees": [tree.to_payload() for tree in model.trees],
        }
    raise TypeError(f"cannot persist model of type {type(model).__name__}")


def save_model(classifier: TrainedClassifier, path: str | Path) -> None:
    pipe = classifier.pipeline
    document = {
        "format_version": FORMAT_VERSION,
        "feature_kind": pipe.feature_kind,
        "cleaning_config": pipe.cleaning.to_payload(),
        "cleaning_hash": pipe.cleaning_hash,
        "vocabulary_hash": pipe.vocabulary_hash,
        "vocabulary": pipe.vocabulary.to_payload(),
        "tfidf": pipe.tfidf.to_payload() if pipe.tfidf is not None else None,
        "classifier": _classifier_payload(classifier.model),
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(document, indent=1), encoding="utf-8")


def _load_classifier(payload: dict):
    kind = payload.get("kind")
    if kind == "logistic":
        weights = np.zeros(int(payload["dimension"]))
        for i, v in payload["weights"]:
            weights[int(i)] = float(v)
        return LogisticModel(
            weights=weights,
            bias=float(payload["bias"]),
            penalty=payload["penalty"],
            C=float(payload["C"]),
            trained_on=payload.get("trained_on"),
            converged=bool(payload.get("converged", True)),
        )
    if kind == "forest":
        return ForestModel(
            trees=tuple(DecisionTree.from_payload(t) for t in payload["trees"]),
            params=ForestParams(**payload["params"]),
            seed=int(payload["seed"]),
            n_features=int(payload["n_features"]),
            trained_on=payload.get("trained_on"),
        )
    raise ModelFormatError(f"unknown classifier kind {kind!r}")


def load_model(path: str | Path) -> TrainedClassifier:
    """Load a model file, refusing unknown versions and corrupt content."""
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: truncated or corrupt model file ({exc.msg})") from None
    if not isinstance(document, dict):
        raise ModelFormatError(f"{path}: model file is not a JSON object")
    version = document.get("format_version")
    if version != FORMAT_VERSION:
        raise ModelFormatError(
            f"{path}: unsupported format_version {version!r} (expected {FORMAT_VERSION})"
        )
    try:
        vocabulary = Vocabulary.from_payload(document["vocabulary"])
        cleaning = CleaningConfig.from_payload(document["cleaning_config"])
        tfidf_payload = document["tfidf"]
        tfidf = None
        if tfidf_payload is not None:
            tfidf = TfIdfModel(
                vocabulary=vocabulary,
                idf=np.asarray(tfidf_payload["idf"], dtype=np.float64),
                n_docs_fitted=int(tfidf_payload["n_docs_fitted"]),
                normalize=bool(tfidf_payload["normalize"]),
            )
        pipeline = make_fitted_pipeline(
            cleaning, document["feature_kind"], vocabulary, tfidf
        )
        model = _load_classifier(document["classifier"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"{path}: invalid model file ({exc})") from None
    return TrainedClassifier(model=model, pipeline=pipeline)
