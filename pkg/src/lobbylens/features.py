"""Bounded n-gram vocabularies and sparse BOW / TF-IDF features.

The vocabulary keeps the ``max_features`` n-grams with the highest document
frequency in the fitting corpus (ties broken lexicographically) and assigns
column indices in lexicographic order over the kept n-grams.  All transforms
emit :class:`SparseVector`; dense materialization of a document collection is
refused above ``DENSE_NNZ_LIMIT`` stored nonzeros.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from ._util import write_csv

DEFAULT_MAX_FEATURES = 25_000
DENSE_NNZ_LIMIT = 1_000_000


@dataclass(eq=False, frozen=True)
class SparseVector:
    """Sorted sparse vector: strictly increasing indices, nonzero values."""

    dimension: int
    indices: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.dimension <= 0:
            raise ValueError(f"dimension must be positive, got {self.dimension}")
        if self.indices.shape != self.values.shape:
            raise ValueError("indices and values must have the same length")
        if self.indices.size:
            if self.indices[0] < 0 or self.indices[-1] >= self.dimension:
                raise ValueError("index out of range for dimension")
            if np.any(np.diff(self.indices) <= 0):
                raise ValueError("indices must be strictly increasing")
            if np.any(self.values == 0.0):
                raise ValueError("stored values must be nonzero")

    @classmethod
    def from_pairs(cls, dimension: int, pairs: Iterable[tuple[int, float]]) -> "SparseVector":
        items = sorted((int(i), float(v)) for i, v in pairs if v != 0.0)
        idx = np.array([i for i, _ in items], dtype=np.int64)
        val = np.array([v for _, v in items], dtype=np.float64)
        return cls(dimension, idx, val)

    def pairs(self) -> list[tuple[int, float]]:
        return list(zip(self.indices.tolist(), self.values.tolist()))

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def value_at(self, index: int) -> float:
        pos = np.searchsorted(self.indices, index)
        if pos < self.indices.size and self.indices[pos] == index:
            return float(self.values[pos])
        return 0.0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseVector):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and np.array_equal(self.indices, other.indices)
            and np.array_equal(self.values, other.values)
        )


def stack_vectors(vectors: Sequence[SparseVector]) -> sp.csr_matrix:
    """Stack sparse vectors of a common dimension into one CSR matrix."""
    if not vectors:
        raise ValueError("cannot stack an empty vector collection")
    dim = vectors[0].dimension
    for v in vectors:
        if v.dimension != dim:
            raise ValueError(f"dimension mismatch: {v.dimension} != {dim}")
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    indptr[1:] = np.cumsum([v.nnz for v in vectors])
    if vectors[0].indices.size or len(vectors) > 1:
        indices = np.concatenate([v.indices for v in vectors])
        data = np.concatenate([v.values for v in vectors])
    else:
        indices = np.zeros(0, dtype=np.int64)
        data = np.zeros(0, dtype=np.float64)
    return sp.csr_matrix((data, indices, indptr), shape=(len(vectors), dim))


def densify(vectors: Sequence[SparseVector]) -> np.ndarray:
    """Dense matrix view of a small vector collection (guarded by nnz limit)."""
    total = sum(v.nnz for v in vectors)
    if total > DENSE_NNZ_LIMIT:
        raise ValueError(
            f"refusing to densify {total} nonzeros (limit {DENSE_NNZ_LIMIT})"
        )
    return stack_vectors(vectors).toarray()


def iter_ngrams(tokens: Sequence[str], ngram_range: tuple[int, int]) -> Iterable[str]:
    """All contiguous n-grams of the given orders, space-joined."""
    lo, hi = ngram_range
    for n in range(lo, hi + 1):
        for i in range(len(tokens) - n + 1):
            yield " ".join(tokens[i : i + n])


@dataclass(frozen=True)
class Vocabulary:
    """Bijection n-gram -> column index, with fitting document frequencies."""

    ngram_range: tuple[int, int]
    max_features: int
    index: Mapping[str, int]
    document_frequency: np.ndarray  # aligned with column indices

    @property
    def size(self) -> int:
        return len(self.index)

    def terms(self) -> list[str]:
        """N-grams ordered by their column index."""
        out = [""] * len(self.index)
        for gram, i in self.index.items():
            out[i] = gram
        return out

    def to_payload(self) -> dict:
        terms = self.terms()
        return {
            "ngram_range": list(self.ngram_range),
            "max_features": self.max_features,
            "terms": terms,
            "document_frequency": [int(d) for d in self.document_frequency],
        }

    @classmethod
    def from_payload(cls, payload: Mapping) -> "Vocabulary":
        terms = payload["terms"]
        return cls(
            ngram_range=tuple(payload["ngram_range"]),
            max_features=int(payload["max_features"]),
            index={g: i for i, g in enumerate(terms)},
            document_frequency=np.asarray(payload["document_frequency"], dtype=np.int64),
        )


def build_vocabulary(
    train_docs: Sequence[Sequence[str]],
    ngram_range: tuple[int, int] = (1, 1),
    max_features: int = DEFAULT_MAX_FEATURES,
) -> Vocabulary:
    """Fit a vocabulary on training documents only.

    Keeps the ``max_features`` n-grams with the highest document frequency,
    breaking frequency ties lexicographically, then assigns column indices
    in lexicographic order over the kept set.
    """
    lo, hi = ngram_range
    if not (1 <= lo <= hi):
        raise ValueError(f"bad ngram_range {ngram_range}: need 1 <= n_min <= n_max")
    if max_features < 1:
        raise ValueError(f"max_features must be >= 1, got {max_features}")
    df: Counter[str] = Counter()
    for doc in train_docs:
        df.update(set(iter_ngrams(doc, ngram_range)))
    if not df:
        raise ValueError("no n-grams found: all training documents are empty")
    ranked = sorted(df.items(), key=lambda kv: (-kv[1], kv[0]))[:max_features]
    kept = sorted(gram for gram, _ in ranked)
    index = {gram: i for i, gram in enumerate(kept)}
    freq = np.array([df[gram] for gram in kept], dtype=np.int64)
    return Vocabulary(ngram_range=(lo, hi), max_features=max_features, index=index,
                      document_frequency=freq)


def transform_bow(doc: Sequence[str], vocab: Vocabulary) -> SparseVector:
    """Raw n-gram counts of one document; out-of-vocabulary grams are ignored."""
    counts: Counter[int] = Counter()
    index = vocab.index
    for gram in iter_ngrams(doc, vocab.ngram_range):
        col = index.get(gram)
        if col is not None:
            counts[col] += 1
    idx = np.array(sorted(counts), dtype=np.int64)
    val = np.array([float(counts[i]) for i in idx], dtype=np.float64)
    return SparseVector(max(vocab.size, 1), idx, val)


@dataclass(frozen=True)
class TfIdfModel:
    """Smoothed IDF weights over a fitted vocabulary.

    idf[t] = ln((1 + n_docs) / (1 + df[t])) + 1, which is strictly positive.
    """

    vocabulary: Vocabulary
    idf: np.ndarray
    n_docs_fitted: int
    normalize: bool = True

    def to_payload(self) -> dict:
        return {
            "idf": [float(x) for x in self.idf],
            "n_docs_fitted": self.n_docs_fitted,
            "normalize": self.normalize,
        }


def fit_tfidf(
    train_docs: Sequence[Sequence[str]],
    vocab: Vocabulary,
    normalize: bool = True,
) -> TfIdfModel:
    """Compute IDF weights from the document frequencies recorded in ``vocab``."""
    n = len(train_docs)
    if n == 0:
        raise ValueError("cannot fit TF-IDF on an empty corpus")
    idf = np.log((1.0 + n) / (1.0 + vocab.document_frequency.astype(np.float64))) + 1.0
    return TfIdfModel(vocabulary=vocab, idf=idf, n_docs_fitted=n, normalize=normalize)


def transform_tfidf(doc: Sequence[str], model: TfIdfModel) -> SparseVector:
    """Counts times IDF, Euclidean-normalized unless the vector is zero."""
    bow = transform_bow(doc, model.vocabulary)
    if bow.nnz == 0:
        return bow
    values = bow.values * model.idf[bow.indices]
    if model.normalize:
        values = values / np.sqrt(np.dot(values, values))
    return SparseVector(bow.dimension, bow.indices, values)


def write_vocabulary_csv(
    path: str | Path, vocab: Vocabulary, idf: np.ndarray | None = None
) -> None:
    """Standalone vocabulary export: (ngram, index, df, idf)."""
    terms = vocab.terms()
    rows = []
    for i, gram in enumerate(terms):
        weight = float(idf[i]) if idf is not None else ""
        rows.append((gram, i, int(vocab.document_frequency[i]), weight))
    write_csv(path, ("ngram", "index", "df", "idf"), rows)
