"""Accuracy, rank-based ROC AUC, threshold selection, and grid search.

AUC follows the pairwise definition (ties get half credit) and is computed
from average ranks in O(n log n).  The decision rule at a threshold is
``score >= threshold`` predicts positive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Mapping, Sequence

import numpy as np
from scipy.stats import rankdata

from .errors import LobbyLensError
from .pipeline import PipelineSpec, TokenDocs, fit_text_classifier, score_token_docs


@dataclass(frozen=True)
class ScoredSet:
    """Paired scores and binary labels."""

    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self) -> None:
        if self.scores.shape != self.labels.shape or self.scores.ndim != 1:
            raise ValueError("scores and labels must be 1-D arrays of equal length")
        if self.scores.size and not np.all(np.isfinite(self.scores)):
            raise ValueError("scores must be finite")
        if self.scores.size and not np.all(np.isin(self.labels, (0, 1))):
            raise ValueError("labels must be 0 or 1")

    @classmethod
    def from_pairs(cls, pairs: Sequence[tuple[float, int]]) -> "ScoredSet":
        scores = np.array([s for s, _ in pairs], dtype=np.float64)
        labels = np.array([l for _, l in pairs], dtype=np.int64)
        return cls(scores, labels)

    @property
    def n_positive(self) -> int:
        return int(self.labels.sum())

    @property
    def n_negative(self) -> int:
        return int(self.labels.size - self.labels.sum())


@dataclass(frozen=True)
class ThresholdResult:
    threshold: float
    accuracy_at_threshold: float


@dataclass(frozen=True)
class GridTrial:
    params: dict
    val_auc: float | None
    error: str | None = None


@dataclass(frozen=True)
class GridSearchResult:
    best_params: dict
    best_val_auc: float
    trials: tuple[GridTrial, ...]
    best_model: Any = None


def accuracy(scored: ScoredSet, threshold: float) -> float:
    """Fraction of examples where (score >= threshold) equals the label."""
    if scored.scores.size == 0:
        raise ValueError("cannot compute accuracy of an empty scored set")
    predicted = scored.scores >= threshold
    return float(np.mean(predicted == (scored.labels == 1)))


def roc_auc(scored: ScoredSet) -> float:
    """Probability a random positive outranks a random negative (ties: 1/2).

    Computed from average ranks of the positive scores, equivalent to the
    normalized Mann-Whitney U statistic.
    """
    pos, neg = scored.n_positive, scored.n_negative
    if pos == 0 or neg == 0:
        raise ValueError(
            f"ROC AUC needs both classes (got {pos} positives, {neg} negatives)"
        )
    ranks = rankdata(scored.scores)
    rank_sum = float(ranks[scored.labels == 1].sum())
    return (rank_sum - pos * (pos + 1) / 2.0) / (pos * neg)


def threshold_candidates(scores: np.ndarray) -> np.ndarray:
    """Midpoints between consecutive distinct scores plus outer sentinels."""
    distinct = np.unique(scores)
    mids = (distinct[:-1] + distinct[1:]) / 2.0
    return np.concatenate([[distinct[0] - 1.0], mids, [distinct[-1] + 1.0]])


def best_threshold(validation: ScoredSet) -> ThresholdResult:
    """Accuracy-maximizing candidate threshold (ties -> smallest candidate)."""
    if validation.scores.size == 0:
        raise ValueError("cannot pick a threshold on an empty scored set")
    best_t = None
    best_acc = -1.0
    for t in threshold_candidates(validation.scores):
        acc = accuracy(validation, float(t))
        if acc > best_acc:
            best_acc = acc
            best_t = float(t)
    return ThresholdResult(threshold=best_t, accuracy_at_threshold=best_acc)


def grid_points(grid: Mapping[str, Sequence]) -> list[dict]:
    """Deterministic lattice order: names sorted, values as listed."""
    names = sorted(grid)
    if not names:
        raise ValueError("parameter grid is empty")
    return [dict(zip(names, combo)) for combo in itertools.product(*(grid[n] for n in names))]


def grid_search(
    grid: Mapping[str, Sequence],
    train_docs: TokenDocs,
    train_labels: Sequence[int],
    val_docs: TokenDocs,
    val_labels: Sequence[int],
    base_spec: PipelineSpec,
    trained_on: str | None = None,
) -> GridSearchResult:
    """Train one model per lattice point, select by validation AUC.

    A trial that fails to train is recorded with its error and excluded
    from the maximum; ties keep the earliest trial.
    """
    val_labels = np.asarray(val_labels, dtype=np.int64)
    trials: list[GridTrial] = []
    best: GridTrial | None = None
    best_model = None
    for params in grid_points(grid):
        spec = base_spec.with_params(params)
        try:
            model = fit_text_classifier(train_docs, train_labels, spec, trained_on)
            scores = np.asarray(score_token_docs(model, val_docs))
            auc = roc_auc(ScoredSet(scores, val_labels))
        except (ValueError, ArithmeticError, LobbyLensError) as exc:
            trials.append(GridTrial(params=params, val_auc=None, error=str(exc)))
            continue
        trial = GridTrial(params=params, val_auc=auc)
        trials.append(trial)
        if best is None or auc > best.val_auc:
            best = trial
            best_model = model
    if best is None:
        raise LobbyLensError("all grid-search trials failed to train")
    return GridSearchResult(
        best_params=dict(best.params),
        best_val_auc=best.val_auc,
        trials=tuple(trials),
        best_model=best_model,
    )
