"""Most influential n-grams of a logistic model, globally and per subject."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from ._util import write_csv
from .corpus import BillDocument, LabelingScheme, build_labeled_dataset
from .features import Vocabulary
from .models import LogisticModel
from .pipeline import PipelineSpec, fit_text_classifier
from .textprep import clean

MIN_SUBJECT_EXAMPLES_PER_CLASS = 50


@dataclass(frozen=True)
class FeatureReport:
    """Ranked positive and negative coefficients mapped back to n-grams."""

    positive: tuple[tuple[str, float], ...]
    negative: tuple[tuple[str, float], ...]
    k: int
    model_id: str
    scope: str = "all"


def top_features(
    model: LogisticModel,
    vocab: Vocabulary,
    k: int,
    model_id: str = "",
    scope: str = "all",
) -> FeatureReport:
    """Top-k positive and top-k negative coefficients.

    Zero coefficients never appear; ties in magnitude break
    lexicographically by n-gram.
    """
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if model.dimension != vocab.size:
        raise ValueError(
            f"model dimension {model.dimension} does not match vocabulary size {vocab.size}"
        )
    terms = vocab.terms()
    weights = model.weights
    pos = [(terms[i], float(weights[i])) for i in np.nonzero(weights > 0)[0]]
    neg = [(terms[i], float(weights[i])) for i in np.nonzero(weights < 0)[0]]
    pos.sort(key=lambda tw: (-tw[1], tw[0]))
    neg.sort(key=lambda tw: (tw[1], tw[0]))
    return FeatureReport(
        positive=tuple(pos[:k]),
        negative=tuple(neg[:k]),
        k=k,
        model_id=model_id,
        scope=scope,
    )


def subject_report(
    corpus: Sequence[BillDocument],
    subject: str,
    scheme: LabelingScheme,
    spec: PipelineSpec,
    k: int,
    min_per_class: int = MIN_SUBJECT_EXAMPLES_PER_CLASS,
) -> FeatureReport:
    """Train a fresh logistic model on one subject's bills and rank features."""
    if spec.model_kind != "logistic":
        raise ValueError("subject reports require a logistic model spec")
    subset = [doc for doc in corpus if doc.subject == subject]
    if not subset:
        raise ValueError(f"subject {subject!r} does not appear in the corpus")
    labeled = build_labeled_dataset(subset, scheme)
    n_pos, n_neg = labeled.n_positive, labeled.n_negative
    if min(n_pos, n_neg) < min_per_class:
        raise ValueError(
            f"subject {subject!r} has {n_pos} positive / {n_neg} negative examples "
            f"under {scheme.scheme_id}; need at least {min_per_class} per class"
        )
    by_id = {doc.id: doc for doc in subset}
    docs = [clean(by_id[bill_id].raw_text, spec.cleaning) for bill_id, _ in labeled.examples]
    labels = [label for _, label in labeled.examples]
    classifier = fit_text_classifier(docs, labels, spec, trained_on=scheme.scheme_id)
    return top_features(
        classifier.model,
        classifier.pipeline.vocabulary,
        k,
        model_id=classifier.pipeline.vocabulary_hash[:12],
        scope=subject,
    )


def write_feature_report_csv(path: str | Path, report: FeatureReport) -> None:
    """CSV rows: (rank, ngram, coefficient, sign, scope), positives first."""
    rows = []
    for sign, entries in (("positive", report.positive), ("negative", report.negative)):
        for rank, (ngram, coef) in enumerate(entries, 1):
            rows.append((rank, ngram, coef, sign, report.scope))
    write_csv(path, ("rank", "ngram", "coefficient", "sign", "scope"), rows)
