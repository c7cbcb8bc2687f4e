"""Rotation scoring of bills that have no lobbying disclosure record.

The pool of unknown-count bills is shuffled and cut into near-equal batches.
Each iteration treats one batch as pseudo-negatives next to the fixed
positive sample, refits the whole feature pipeline and model, and scores
every bill in the remaining batches.  With B batches each pool bill collects
exactly B - 1 held-out probabilities whose average is its final score.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from ._util import write_csv
from .corpus import BillDocument, D3, LabelingScheme
from .pipeline import PipelineSpec, fit_text_classifier
from .textprep import clean

DEFAULT_MIN_YEAR = 1990
DEFAULT_MIN_WORDS = 2000


@dataclass(frozen=True)
class RotationConfig:
    """Batch count, seed, and the pool filters applied before batching."""

    num_batches: int = 5
    seed: int = 0
    positive_scheme: LabelingScheme = D3
    min_year: int = DEFAULT_MIN_YEAR
    min_words: int = DEFAULT_MIN_WORDS

    def __post_init__(self) -> None:
        if self.num_batches < 2:
            raise ValueError("num_batches must be >= 2")


@dataclass(frozen=True)
class UnlabeledScore:
    """Held-out probabilities for one pool bill.

    ``iteration_scores[k]`` comes from the k-th iteration among those that
    scored this bill, i.e. all batch indices except ``batch_index`` in
    ascending order.
    """

    bill_id: str
    batch_index: int
    iteration_scores: tuple[float, ...]
    mean_score: float


@dataclass(frozen=True)
class RotationResult:
    scores: tuple[UnlabeledScore, ...]
    batches: tuple[tuple[str, ...], ...]
    num_batches: int
    seed: int

    def batch_of(self) -> dict[str, int]:
        assignment: dict[str, int] = {}
        for i, batch in enumerate(self.batches):
            for bill_id in batch:
                assignment[bill_id] = i
        return assignment


@dataclass(frozen=True)
class PoolSelection:
    bills: tuple[BillDocument, ...]
    n_missing_date: int


def filter_pool(
    bills: Sequence[BillDocument],
    min_year: int = DEFAULT_MIN_YEAR,
    min_words: int = DEFAULT_MIN_WORDS,
) -> PoolSelection:
    """Unknown-count bills from ``min_year`` on with at least ``min_words`` words.

    Unknown-count bills without a date cannot be placed on the timeline;
    they are excluded and counted.
    """
    kept: list[BillDocument] = []
    missing_date = 0
    for doc in bills:
        if doc.lobby_count is not None:
            continue
        if doc.introduced_date is None:
            missing_date += 1
            continue
        if doc.introduced_date.year >= min_year and doc.word_count >= min_words:
            kept.append(doc)
    return PoolSelection(bills=tuple(kept), n_missing_date=missing_date)


def _near_equal_batches(n: int, num_batches: int) -> list[int]:
    base, extra = divmod(n, num_batches)
    return [base + 1 if i < extra else base for i in range(num_batches)]


def rotation_score(
    positives: Sequence[BillDocument],
    pool: Sequence[BillDocument],
    config: RotationConfig,
    spec: PipelineSpec,
) -> RotationResult:
    """Run the full rotation; every pool bill ends with B - 1 scores.

    The positive sample is identical in every iteration.  Each iteration
    refits vocabulary, feature weights, and the classifier from scratch,
    because the pseudo-negative batch changes the document frequencies.
    """
    if not positives:
        raise ValueError("rotation needs a non-empty positive sample")
    if len(pool) < config.num_batches:
        raise ValueError(
            f"pool of {len(pool)} bills cannot be split into {config.num_batches} batches"
        )
    pos_tokens = [clean(doc.raw_text, spec.cleaning) for doc in positives]
    pool_tokens = {doc.id: clean(doc.raw_text, spec.cleaning) for doc in pool}

    order = np.arange(len(pool))
    rng = np.random.default_rng(config.seed)
    rng.shuffle(order)
    sizes = _near_equal_batches(len(pool), config.num_batches)
    batches: list[tuple[str, ...]] = []
    cursor = 0
    for size in sizes:
        batches.append(tuple(pool[i].id for i in order[cursor : cursor + size]))
        cursor += size

    collected: dict[str, list[float]] = {doc.id: [] for doc in pool}
    labels = [1] * len(positives)
    for i, batch in enumerate(batches):
        train_docs = pos_tokens + [pool_tokens[bill_id] for bill_id in batch]
        train_labels = labels + [0] * len(batch)
        classifier = fit_text_classifier(
            train_docs, train_labels, spec, trained_on=f"rotation_iter_{i}"
        )
        for j, other in enumerate(batches):
            if j == i:
                continue
            for bill_id in other:
                collected[bill_id].append(classifier.score_tokens(pool_tokens[bill_id]))

    batch_of = {bill_id: i for i, batch in enumerate(batches) for bill_id in batch}
    scores = tuple(
        UnlabeledScore(
            bill_id=doc.id,
            batch_index=batch_of[doc.id],
            iteration_scores=tuple(collected[doc.id]),
            mean_score=float(np.mean(collected[doc.id])),
        )
        for doc in pool
    )
    return RotationResult(
        scores=scores,
        batches=tuple(batches),
        num_batches=config.num_batches,
        seed=config.seed,
    )


@dataclass(frozen=True)
class QuarterStats:
    year: int
    quarter: int
    n_bills: int
    share_above: Mapping[float, float]


@dataclass(frozen=True)
class QuarterSeries:
    thresholds: tuple[float, ...]
    entries: tuple[QuarterStats, ...]
    n_undated: int


def quarter_trend(
    scores: Sequence[UnlabeledScore],
    corpus: Mapping[str, BillDocument] | Sequence[BillDocument],
    thresholds: tuple[float, ...] = (0.5, 0.9),
) -> QuarterSeries:
    """Per calendar quarter: pool size and share of bills above each threshold.

    Comparisons are strict; undated bills are excluded and counted.
    """
    by_id = corpus if isinstance(corpus, Mapping) else {d.id: d for d in corpus}
    grouped: dict[tuple[int, int], list[float]] = {}
    undated = 0
    for s in scores:
        doc = by_id[s.bill_id]
        if doc.introduced_date is None:
            undated += 1
            continue
        key = (doc.introduced_date.year, (doc.introduced_date.month - 1) // 3 + 1)
        grouped.setdefault(key, []).append(s.mean_score)
    entries = []
    for (year, quarter) in sorted(grouped):
        values = np.asarray(grouped[(year, quarter)])
        shares = {t: float(np.mean(values > t)) for t in thresholds}
        entries.append(
            QuarterStats(year=year, quarter=quarter, n_bills=values.size, share_above=shares)
        )
    return QuarterSeries(thresholds=tuple(thresholds), entries=tuple(entries), n_undated=undated)


@dataclass(frozen=True)
class SubjectStats:
    subject: str
    n_bills: int
    share_above: Mapping[float, float]


@dataclass(frozen=True)
class SubjectProportions:
    thresholds: tuple[float, ...]
    rows: tuple[SubjectStats, ...]


def subject_table(
    scores: Sequence[UnlabeledScore],
    corpus: Mapping[str, BillDocument] | Sequence[BillDocument],
    thresholds: tuple[float, ...] = (0.5, 0.75, 0.9),
) -> SubjectProportions:
    """Share of high-scoring pool bills per subject, sorted by the first
    threshold's share (descending).  Subjectless bills group under "(none)".
    """
    by_id = corpus if isinstance(corpus, Mapping) else {d.id: d for d in corpus}
    grouped: dict[str, list[float]] = {}
    for s in scores:
        subject = by_id[s.bill_id].subject or "(none)"
        grouped.setdefault(subject, []).append(s.mean_score)
    rows = []
    for subject, values_list in grouped.items():
        values = np.asarray(values_list)
        shares = {t: float(np.mean(values > t)) for t in thresholds}
        rows.append(SubjectStats(subject=subject, n_bills=values.size, share_above=shares))
    first = thresholds[0]
    rows.sort(key=lambda r: (-r.share_above[first], r.subject))
    return SubjectProportions(thresholds=tuple(thresholds), rows=tuple(rows))


@dataclass(frozen=True)
class TopBill:
    bill_name: str
    title: str | None
    congress: int | None
    mean_score: float
    subject: str | None


def top_k_report(
    scores: Sequence[UnlabeledScore],
    corpus: Mapping[str, BillDocument] | Sequence[BillDocument],
    k: int = 25,
) -> list[TopBill]:
    """The k pool bills most likely to have been lobbied (ties by bill id)."""
    if k <= 0:
        raise ValueError(f"k must be positive, got {k}")
    if not scores:
        raise ValueError("no scores to report")
    by_id = corpus if isinstance(corpus, Mapping) else {d.id: d for d in corpus}
    ranked = sorted(scores, key=lambda s: (-s.mean_score, s.bill_id))[:k]
    out = []
    for s in ranked:
        doc = by_id[s.bill_id]
        out.append(
            TopBill(
                bill_name=doc.id,
                title=doc.title,
                congress=doc.congress,
                mean_score=s.mean_score,
                subject=doc.subject,
            )
        )
    return out


def write_scores_csv(path: str | Path, result: RotationResult) -> None:
    """CSV: bill_id, score_iter_0..score_iter_{B-2}, mean_score."""
    n_iter = result.num_batches - 1
    header = ["bill_id"] + [f"score_iter_{i}" for i in range(n_iter)] + ["mean_score"]
    rows = [
        [s.bill_id, *s.iteration_scores, s.mean_score]
        for s in result.scores
    ]
    write_csv(path, header, rows)


def write_quarter_csv(path: str | Path, series: QuarterSeries) -> None:
    header = ["quarter", "n_bills"] + [
        f"share_gt_{_threshold_tag(t)}" for t in series.thresholds
    ]
    rows = [
        [f"{e.year}Q{e.quarter}", e.n_bills, *(e.share_above[t] for t in series.thresholds)]
        for e in series.entries
    ]
    write_csv(path, header, rows,
              footer_comments=(f"undated bills excluded: {series.n_undated}",))


def write_subject_csv(path: str | Path, table: SubjectProportions) -> None:
    header = ["subject"] + [
        f"share_gt_{_threshold_tag(t)}" for t in table.thresholds
    ] + ["n_bills"]
    rows = [
        [r.subject, *(r.share_above[t] for t in table.thresholds), r.n_bills]
        for r in table.rows
    ]
    write_csv(path, header, rows)


def write_top_bills_csv(path: str | Path, bills: Sequence[TopBill]) -> None:
    rows = [
        [b.bill_name, b.title or "", b.congress if b.congress is not None else "",
         b.mean_score, b.subject or ""]
        for b in bills
    ]
    write_csv(path, ("bill_name", "title", "congress", "mean_score", "subject"), rows)


def _threshold_tag(t: float) -> str:
    return f"{t:g}".replace(".", "_")
