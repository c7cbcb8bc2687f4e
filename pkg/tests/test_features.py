"""Vocabulary fitting, sparse vectors, and BOW / TF-IDF transforms."""

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lobbylens import (
    SparseVector,
    build_vocabulary,
    fit_tfidf,
    transform_bow,
    transform_tfidf,
)
from lobbylens.features import densify, iter_ngrams, stack_vectors

from conftest import random_token_docs


class TestSparseVector:
    def test_from_pairs_sorts_and_drops_zeros(self):
        v = SparseVector.from_pairs(5, [(3, 2.0), (1, 1.0), (4, 0.0)])
        assert v.pairs() == [(1, 1.0), (3, 2.0)]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="range"):
            SparseVector(2, np.array([2]), np.array([1.0]))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError, match="increasing"):
            SparseVector(4, np.array([1, 1]), np.array([1.0, 2.0]))

    def test_rejects_stored_zero(self):
        with pytest.raises(ValueError, match="nonzero"):
            SparseVector(4, np.array([1]), np.array([0.0]))

    def test_value_at(self):
        v = SparseVector.from_pairs(6, [(2, 5.0)])
        assert v.value_at(2) == 5.0
        assert v.value_at(3) == 0.0

    def test_stack_and_densify(self):
        vectors = [SparseVector.from_pairs(3, [(0, 1.0)]),
                   SparseVector.from_pairs(3, [(2, 4.0)])]
        dense = densify(vectors)
        assert dense.tolist() == [[1.0, 0.0, 0.0], [0.0, 0.0, 4.0]]
        assert stack_vectors(vectors).shape == (2, 3)

    def test_stack_rejects_mixed_dimensions(self):
        with pytest.raises(ValueError, match="mismatch"):
            stack_vectors([SparseVector.from_pairs(3, []), SparseVector.from_pairs(4, [])])


class TestVocabulary:
    def test_enumerated_document_frequency(self):
        docs = [["a", "b"], ["b", "c"]]
        vocab = build_vocabulary(docs, (1, 1), max_features=10)
        assert set(vocab.index) == {"a", "b", "c"}
        # oracle: recount df by enumeration
        expected = Counter()
        for doc in docs:
            expected.update(set(doc))
        for gram, col in vocab.index.items():
            assert vocab.document_frequency[col] == expected[gram]

    def test_tie_broken_lexicographically(self):
        vocab = build_vocabulary([["a", "b"], ["b", "c"]], (1, 1), max_features=2)
        assert set(vocab.index) == {"a", "b"}

    def test_exhaustive_ngrams_one_doc(self):
        vocab = build_vocabulary([["a", "b"]], (1, 2), max_features=10)
        assert set(vocab.index) == {"a", "b", "a b"}

    def test_all_entries_within_ngram_range(self):
        docs = [["x", "y", "z", "x"], ["y", "z"]]
        vocab = build_vocabulary(docs, (1, 2), max_features=100)
        for gram in vocab.index:
            assert 1 <= len(gram.split(" ")) <= 2

    def test_indices_are_bijection(self):
        docs = [["a", "b", "c"], ["c", "d"]]
        vocab = build_vocabulary(docs, (1, 1), max_features=3)
        assert sorted(vocab.index.values()) == list(range(vocab.size))

    def test_all_empty_documents_error(self):
        with pytest.raises(ValueError, match="empty"):
            build_vocabulary([[], []], (1, 1))

    def test_bad_range_rejected(self):
        with pytest.raises(ValueError, match="ngram_range"):
            build_vocabulary([["a"]], (2, 1))

    def test_deterministic(self, rng):
        docs = random_token_docs(rng, 40)
        v1 = build_vocabulary(docs, (1, 2), 50)
        v2 = build_vocabulary(docs, (1, 2), 50)
        assert v1.index == v2.index
        assert np.array_equal(v1.document_frequency, v2.document_frequency)

    def test_payload_round_trip(self):
        vocab = build_vocabulary([["a", "b"], ["b"]], (1, 1), 10)
        from lobbylens import Vocabulary
        back = Vocabulary.from_payload(vocab.to_payload())
        assert back.index == vocab.index
        assert np.array_equal(back.document_frequency, vocab.document_frequency)


class TestBow:
    def test_counting(self):
        vocab = build_vocabulary([["a", "b"]], (1, 1), 10)
        v = transform_bow(["a", "a", "b"], vocab)
        assert v.pairs() == [(vocab.index["a"], 2.0), (vocab.index["b"], 1.0)]

    def test_empty_doc_zero_vector(self):
        vocab = build_vocabulary([["a", "b"]], (1, 1), 10)
        v = transform_bow([], vocab)
        assert v.nnz == 0 and v.dimension == vocab.size

    def test_oov_only_zero_vector(self):
        vocab = build_vocabulary([["a"]], (1, 1), 10)
        assert transform_bow(["zz", "qq"], vocab).nnz == 0

    @given(st.lists(st.sampled_from("abcd"), min_size=0, max_size=40))
    @settings(max_examples=100, deadline=None)
    def test_total_mass_counts_in_vocab_grams(self, tokens):
        vocab = build_vocabulary([["a", "b", "c"]], (1, 1), 10)
        v = transform_bow(list(tokens), vocab)
        in_vocab = sum(1 for t in tokens if t in vocab.index)
        assert v.values.sum() == in_vocab

    def test_unigram_counts_reconstructible(self, rng):
        docs = random_token_docs(rng, 10, vocab=15)
        vocab = build_vocabulary(docs, (1, 1), max_features=1000)
        terms = vocab.terms()
        for doc in docs:
            v = transform_bow(doc, vocab)
            rebuilt = Counter()
            for idx, value in v.pairs():
                rebuilt[terms[int(idx)]] = int(value)
            assert rebuilt == Counter(doc)


class TestTfIdf:
    def test_hand_idf_values(self):
        docs = [["every", "u1"], ["every", "u2"], ["every", "u3"], ["every", "u4"]]
        vocab = build_vocabulary(docs, (1, 1), 100)
        model = fit_tfidf(docs, vocab)
        idf = {g: model.idf[i] for g, i in vocab.index.items()}
        assert idf["every"] == pytest.approx(1.0, abs=1e-12)
        assert idf["u1"] == pytest.approx(math.log(5 / 2) + 1, abs=1e-12)

    def test_single_document_idf_one(self):
        docs = [["only", "doc"]]
        vocab = build_vocabulary(docs, (1, 1), 100)
        model = fit_tfidf(docs, vocab)
        assert np.allclose(model.idf, 1.0, atol=1e-12)

    def test_empty_corpus_error(self):
        vocab = build_vocabulary([["a"]], (1, 1), 10)
        with pytest.raises(ValueError, match="empty"):
            fit_tfidf([], vocab)

    def test_all_oov_doc_stays_zero(self):
        docs = [["a", "b"]]
        model = fit_tfidf(docs, build_vocabulary(docs, (1, 1), 10))
        assert transform_tfidf(["qq"], model).nnz == 0

    def test_single_entry_normalizes_to_one(self):
        docs = [["a"], ["a"]]
        model = fit_tfidf(docs, build_vocabulary(docs, (1, 1), 10))
        v = transform_tfidf(["a"], model)
        assert v.pairs() == [(0, 1.0)]

    def test_count_times_idf_unnormalized(self):
        docs = [["a", "b"], ["a"]]
        vocab = build_vocabulary(docs, (1, 1), 10)
        model = fit_tfidf(docs, vocab, normalize=False)
        v = transform_tfidf(["a", "a", "b"], model)
        values = dict(v.pairs())
        assert values[vocab.index["a"]] == pytest.approx(2 * model.idf[vocab.index["a"]])
        assert values[vocab.index["b"]] == pytest.approx(1 * model.idf[vocab.index["b"]])

    def test_idf_strictly_positive(self, rng):
        docs = random_token_docs(rng, 25)
        model = fit_tfidf(docs, build_vocabulary(docs, (1, 2), 500))
        assert np.all(model.idf > 0)

    def test_nonzero_vectors_have_unit_norm(self, rng):
        docs = random_token_docs(rng, 30)
        model = fit_tfidf(docs, build_vocabulary(docs, (1, 2), 300))
        for doc in docs:
            v = transform_tfidf(doc, model)
            if v.nnz:
                assert v.norm() == pytest.approx(1.0, abs=1e-12)
