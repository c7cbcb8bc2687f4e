"""Model files: bit-exact round trips and corrupt-file handling."""

import json

import numpy as np
import pytest

from lobbylens import (
    ModelFormatError,
    PipelineSpec,
    fit_text_classifier,
    load_model,
    save_model,
)
from lobbylens.textprep import CleaningConfig

from conftest import random_token_docs


def fitted(rng, model_kind: str, **model_params):
    docs = random_token_docs(rng, 30)
    labels = (rng.integers(0, 2, size=30)).tolist()
    labels[0], labels[1] = 0, 1
    spec = PipelineSpec(
        cleaning=CleaningConfig(stopword_lists=()),
        ngram_range=(1, 2),
        max_features=200,
        model_kind=model_kind,
        model_params=model_params,
        seed=5,
    )
    return fit_text_classifier(docs, labels, spec, trained_on="D1")


@pytest.mark.parametrize("kind,params", [
    ("logistic", {"penalty": "l2", "C": 2.0}),
    ("logistic", {"penalty": "l1", "C": 0.5}),
    ("forest", {"n_trees": 5, "max_depth": 4}),
])
def test_round_trip_is_bit_exact(tmp_path, rng, kind, params):
    classifier = fitted(rng, kind, **params)
    path = tmp_path / "model.json"
    save_model(classifier, path)
    loaded = load_model(path)
    assert loaded.kind == classifier.kind
    assert loaded.pipeline.vocabulary_hash == classifier.pipeline.vocabulary_hash
    assert loaded.pipeline.cleaning_hash == classifier.pipeline.cleaning_hash
    probe = random_token_docs(rng, 100)
    for doc in probe:
        assert loaded.score_tokens(doc) == classifier.score_tokens(doc)


def test_unknown_format_version(tmp_path, rng):
    path = tmp_path / "model.json"
    save_model(fitted(rng, "logistic"), path)
    doc = json.loads(path.read_text())
    doc["format_version"] = 99
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelFormatError, match="format_version"):
        load_model(path)


def test_truncated_file(tmp_path, rng):
    path = tmp_path / "model.json"
    save_model(fitted(rng, "logistic"), path)
    blob = path.read_text()
    path.write_text(blob[: len(blob) // 2])
    with pytest.raises(ModelFormatError, match="truncated or corrupt"):
        load_model(path)


def test_missing_section(tmp_path, rng):
    path = tmp_path / "model.json"
    save_model(fitted(rng, "logistic"), path)
    doc = json.loads(path.read_text())
    del doc["vocabulary"]
    path.write_text(json.dumps(doc))
    with pytest.raises(ModelFormatError, match="invalid model file"):
        load_model(path)


def test_non_object_file(tmp_path):
    path = tmp_path / "model.json"
    path.write_text("[1, 2, 3]")
    with pytest.raises(ModelFormatError, match="JSON object"):
        load_model(path)


def test_trained_on_survives(tmp_path, rng):
    path = tmp_path / "model.json"
    save_model(fitted(rng, "logistic"), path)
    assert load_model(path).model.trained_on == "D1"
