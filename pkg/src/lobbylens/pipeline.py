"""End-to-end training: tokens -> vocabulary -> features -> classifier.

A :class:`PipelineSpec` is the unfitted description of one experiment arm;
``fit_text_classifier`` turns it into a :class:`TrainedClassifier` whose
recorded pipeline is re-applied verbatim at scoring time.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Mapping, Sequence

from .features import (
    DEFAULT_MAX_FEATURES,
    build_vocabulary,
    fit_tfidf,
    transform_bow,
    transform_tfidf,
)
from .models import (
    ForestParams,
    TrainedClassifier,
    make_fitted_pipeline,
    train_forest,
    train_logistic,
)
from .textprep import CleaningConfig

TokenDocs = Sequence[Sequence[str]]

_SPEC_FIELDS = {"ngram_range", "max_features", "feature_kind", "model_kind", "seed"}

MODEL_KINDS = ("logistic", "forest")


@dataclass(frozen=True)
class PipelineSpec:
    """Unfitted experiment arm: cleaning, features, and model settings.

    ``model_params`` feeds ``train_logistic`` (penalty, C, tol, max_iter)
    or :class:`ForestParams`, depending on ``model_kind``.
    """

    cleaning: CleaningConfig = field(default_factory=CleaningConfig)
    ngram_range: tuple[int, int] = (1, 2)
    max_features: int = DEFAULT_MAX_FEATURES
    feature_kind: str = "tfidf"
    model_kind: str = "logistic"
    model_params: Mapping[str, Any] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        if self.feature_kind not in ("bow", "tfidf"):
            raise ValueError(f"unknown feature_kind {self.feature_kind!r}")
        if self.model_kind not in MODEL_KINDS:
            raise ValueError(f"unknown model_kind {self.model_kind!r}")

    def with_params(self, params: Mapping[str, Any]) -> "PipelineSpec":
        """Override spec fields by name; unknown names go to model_params."""
        direct = {k: v for k, v in params.items() if k in _SPEC_FIELDS}
        if "ngram_range" in direct:
            direct["ngram_range"] = tuple(direct["ngram_range"])
        extra = {k: v for k, v in params.items() if k not in _SPEC_FIELDS}
        merged = dict(self.model_params)
        merged.update(extra)
        return replace(self, model_params=merged, **direct)


def fit_text_classifier(
    token_docs: TokenDocs,
    labels: Sequence[int],
    spec: PipelineSpec,
    trained_on: str | None = None,
) -> TrainedClassifier:
    """Fit vocabulary, feature weights, and model on training documents only."""
    if len(token_docs) != len(labels):
        raise ValueError(f"got {len(token_docs)} documents but {len(labels)} labels")
    vocab = build_vocabulary(token_docs, spec.ngram_range, spec.max_features)
    tfidf = None
    if spec.feature_kind == "tfidf":
        tfidf = fit_tfidf(token_docs, vocab)
        X = [transform_tfidf(doc, tfidf) for doc in token_docs]
    else:
        X = [transform_bow(doc, vocab) for doc in token_docs]
    if spec.model_kind == "logistic":
        model = train_logistic(X, labels, trained_on=trained_on, **spec.model_params)
    else:
        params = ForestParams(**spec.model_params)
        model = train_forest(X, labels, params=params, seed=spec.seed,
                             trained_on=trained_on)
    pipeline = make_fitted_pipeline(spec.cleaning, spec.feature_kind, vocab, tfidf)
    return TrainedClassifier(model=model, pipeline=pipeline)


def score_token_docs(classifier: TrainedClassifier, token_docs: TokenDocs) -> list[float]:
    return [classifier.score_tokens(doc) for doc in token_docs]
