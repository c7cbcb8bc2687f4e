"""Classifier bundled with the exact feature pipeline it was trained on."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

from ..features import SparseVector, TfIdfModel, Vocabulary, transform_bow, transform_tfidf
from ..textprep import CleaningConfig, clean
from .._util import stable_hash, write_csv
from .forest import ForestModel
from .logistic import LogisticModel

AnyModel = Union[LogisticModel, ForestModel]

FEATURE_KINDS = ("bow", "tfidf")


@dataclass(frozen=True)
class FittedPipeline:
    """Cleaning config plus fitted vocabulary / TF-IDF weights.

    Scoring a raw document re-applies exactly this pipeline, and the two
    hashes identify it in model files and manifests.
    """

    cleaning: CleaningConfig
    feature_kind: str
    vocabulary: Vocabulary
    tfidf: TfIdfModel | None
    cleaning_hash: str
    vocabulary_hash: str

    def transform_tokens(self, tokens: Sequence[str]) -> SparseVector:
        if self.feature_kind == "tfidf":
            return transform_tfidf(tokens, self.tfidf)
        return transform_bow(tokens, self.vocabulary)

    def transform_text(self, text: str) -> SparseVector:
        return self.transform_tokens(clean(text, self.cleaning))


def make_fitted_pipeline(
    cleaning: CleaningConfig,
    feature_kind: str,
    vocabulary: Vocabulary,
    tfidf: TfIdfModel | None,
) -> FittedPipeline:
    if feature_kind not in FEATURE_KINDS:
        raise ValueError(f"feature_kind must be one of {FEATURE_KINDS}, got {feature_kind!r}")
    if feature_kind == "tfidf" and tfidf is None:
        raise ValueError("tfidf feature kind requires a fitted TfIdfModel")
    return FittedPipeline(
        cleaning=cleaning,
        feature_kind=feature_kind,
        vocabulary=vocabulary,
        tfidf=tfidf,
        cleaning_hash=stable_hash(cleaning.to_payload()),
        vocabulary_hash=stable_hash(vocabulary.to_payload()),
    )


@dataclass(frozen=True)
class TrainedClassifier:
    """Tagged union of the two model families plus pipeline identity."""

    model: AnyModel
    pipeline: FittedPipeline

    @property
    def kind(self) -> str:
        return "logistic" if isinstance(self.model, LogisticModel) else "forest"

    def predict_proba(self, features: SparseVector) -> float:
        return self.model.predict_proba(features)

    def score_tokens(self, tokens: Sequence[str]) -> float:
        return self.predict_proba(self.pipeline.transform_tokens(tokens))

    def score_text(self, text: str) -> float:
        return self.predict_proba(self.pipeline.transform_text(text))


def predict_proba(classifier: TrainedClassifier, features: SparseVector) -> float:
    """Probability that the document behind ``features`` is positive."""
    return classifier.predict_proba(features)


def write_predictions_csv(path: str | Path,
                          rows: Iterable[tuple[str, float]]) -> None:
    """Per-bill prediction export: (bill_id, probability)."""
    write_csv(path, ("bill_id", "probability"), rows)
