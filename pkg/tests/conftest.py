"""Shared builders and independent oracles used across the test suite."""

from __future__ import annotations

import datetime as dt

import numpy as np
import pytest

from lobbylens import BillDocument, ScoredSet, SparseVector


def make_bill(
    bill_id: str,
    lobby_count=None,
    n_words: int = 10,
    token: str = "alpha",
    date: dt.date | None = None,
    subject: str | None = None,
    text: str | None = None,
    **meta,
) -> BillDocument:
    if text is None:
        text = " ".join(f"{token}{i % 7}" for i in range(n_words))
    return BillDocument.from_text(
        bill_id, text, lobby_count=lobby_count, introduced_date=date,
        subject=subject, **meta,
    )


def random_sparse_vector(rng: np.random.Generator, dimension: int,
                         max_nnz: int = 12) -> SparseVector:
    nnz = int(rng.integers(0, max_nnz + 1))
    idx = rng.choice(dimension, size=min(nnz, dimension), replace=False)
    vals = rng.normal(size=idx.size)
    vals[vals == 0.0] = 1.0
    return SparseVector.from_pairs(dimension, zip(idx.tolist(), vals.tolist()))


def random_token_docs(rng: np.random.Generator, n_docs: int, vocab: int = 30,
                      length: tuple[int, int] = (5, 20)) -> list[list[str]]:
    docs = []
    for _ in range(n_docs):
        n = int(rng.integers(length[0], length[1] + 1))
        docs.append([f"t{int(k)}" for k in rng.integers(0, vocab, size=n)])
    return docs


def brute_force_auc(scored: ScoredSet) -> float:
    """O(P*N) pairwise oracle: wins count 1, ties count 1/2."""
    pos = scored.scores[scored.labels == 1]
    neg = scored.scores[scored.labels == 0]
    wins = 0.0
    for p in pos:
        for n in neg:
            if p > n:
                wins += 1.0
            elif p == n:
                wins += 0.5
    return wins / (pos.size * neg.size)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
