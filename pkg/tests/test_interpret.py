"""Coefficient ranking and per-subject feature reports."""

import numpy as np
import pytest

from lobbylens import (
    D1,
    LogisticModel,
    PipelineSpec,
    build_vocabulary,
    subject_report,
    top_features,
)
from lobbylens.interpret import write_feature_report_csv
from lobbylens.textprep import CleaningConfig

from conftest import make_bill


def model_with(weights):
    return LogisticModel(weights=np.asarray(weights, dtype=float), bias=0.0,
                         penalty="l2", C=1.0)


def vocab_abc():
    return build_vocabulary([["a", "b", "c"]], (1, 1), 10)


class TestTopFeatures:
    def test_sorting(self):
        report = top_features(model_with([2.0, -1.0, 0.5]), vocab_abc(), k=2)
        assert report.positive == (("a", 2.0), ("c", 0.5))
        assert report.negative == (("b", -1.0),)

    def test_all_zero_weights(self):
        report = top_features(model_with([0.0, 0.0, 0.0]), vocab_abc(), k=3)
        assert report.positive == () and report.negative == ()

    def test_k_larger_than_nonzero(self):
        report = top_features(model_with([1.0, 0.0, 0.0]), vocab_abc(), k=10)
        assert report.positive == (("a", 1.0),)

    def test_tie_breaks_lexicographically(self):
        report = top_features(model_with([1.5, 1.5, -1.5]), vocab_abc(), k=5)
        assert report.positive == (("a", 1.5), ("b", 1.5))
        assert report.negative == (("c", -1.5),)

    def test_positive_negative_disjoint(self):
        report = top_features(model_with([0.3, -0.3, 0.1]), vocab_abc(), k=5)
        pos = {g for g, _ in report.positive}
        neg = {g for g, _ in report.negative}
        assert not pos & neg

    def test_scaling_weights_keeps_order(self):
        weights = np.array([0.7, -0.2, 0.9])
        base = top_features(model_with(weights), vocab_abc(), k=3)
        scaled = top_features(model_with(weights * 4.5), vocab_abc(), k=3)
        assert [g for g, _ in base.positive] == [g for g, _ in scaled.positive]
        assert [g for g, _ in base.negative] == [g for g, _ in scaled.negative]

    def test_invalid_k(self):
        with pytest.raises(ValueError, match="k must be positive"):
            top_features(model_with([1.0, 0.0, 0.0]), vocab_abc(), k=0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="vocabulary"):
            top_features(model_with([1.0]), vocab_abc(), k=1)

    def test_csv_layout(self, tmp_path):
        report = top_features(model_with([2.0, -1.0, 0.5]), vocab_abc(), k=2)
        out = tmp_path / "features.csv"
        write_feature_report_csv(out, report)
        lines = out.read_text().splitlines()
        assert lines[0] == "rank,ngram,coefficient,sign,scope"
        assert lines[1] == "1,a,2.0,positive,all"
        assert lines[-1] == "1,b,-1.0,negative,all"


def subject_corpus(subject_signals, n_per_class=60, seed=0):
    """Each subject gets its own planted token inside lobbied bills."""
    rng = np.random.default_rng(seed)
    docs = []
    i = 0
    for subject, signal in subject_signals.items():
        for label in (1, 0):
            for _ in range(n_per_class):
                words = [f"base{int(k)}" for k in rng.integers(0, 40, size=30)]
                if label:
                    words[:6] = [signal] * 6
                docs.append(make_bill(
                    f"b{i}", lobby_count=80 if label else 0,
                    subject=subject, text=" ".join(words),
                ))
                i += 1
    return docs


def plain_spec():
    return PipelineSpec(cleaning=CleaningConfig(stopword_lists=(), lemmatize=False),
                        ngram_range=(1, 1), max_features=200)


class TestSubjectReport:
    def test_planted_signal_surfaces(self):
        corpus = subject_corpus({"Energy": "smart"})
        report = subject_report(corpus, "Energy", D1, plain_spec(), k=5)
        assert report.scope == "Energy"
        assert "smart" in [g for g, _ in report.positive]

    def test_absent_subject(self):
        corpus = subject_corpus({"Energy": "smart"})
        with pytest.raises(ValueError, match="'Health'"):
            subject_report(corpus, "Health", D1, plain_spec(), k=5)

    def test_disjoint_subjects_share_no_ngrams(self):
        corpus = subject_corpus({"Energy": "smart", "Health": "overdose"}, seed=3)
        energy = subject_report(corpus, "Energy", D1, plain_spec(), k=3)
        health = subject_report(corpus, "Health", D1, plain_spec(), k=3)
        energy_top = {g for g, _ in energy.positive}
        health_top = {g for g, _ in health.positive}
        assert "smart" in energy_top and "overdose" in health_top
        assert not energy_top & health_top

    def test_insufficient_examples_names_counts(self):
        corpus = subject_corpus({"Energy": "smart"}, n_per_class=10)
        with pytest.raises(ValueError, match="10 positive / 10 negative"):
            subject_report(corpus, "Energy", D1, plain_spec(), k=5)

    def test_forest_spec_rejected(self):
        corpus = subject_corpus({"Energy": "smart"})
        spec = PipelineSpec(cleaning=CleaningConfig(stopword_lists=()),
                            model_kind="forest")
        with pytest.raises(ValueError, match="logistic"):
            subject_report(corpus, "Energy", D1, spec, k=5)
