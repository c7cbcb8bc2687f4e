"""Cleaning pipeline order, the rule lemmatizer, and stopword files."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lobbylens import (
    CleaningConfig,
    DataFormatError,
    StopwordList,
    bundled_stopwords,
    clean,
    default_cleaning_config,
    lemmatize,
    load_stopword_file,
)
from lobbylens.textprep import _bundled_lemma_exceptions


def config_with(words: set[str], **kwargs) -> CleaningConfig:
    return CleaningConfig(stopword_lists=(StopwordList("test", frozenset(words)),), **kwargs)


class TestClean:
    def test_hand_pipeline_case(self):
        assert clean("The Act of 2018.", config_with({"the", "of"})) == ["act"]

    def test_empty_input(self):
        assert clean("", default_cleaning_config()) == []

    def test_law_stopword_and_lemma(self):
        cfg = CleaningConfig(stopword_lists=(StopwordList("law", frozenset({"section"})),))
        assert clean("SECTION 3. Appropriations;", cfg) == ["appropriation"]

    def test_lemma_can_become_stopword(self):
        # "amended" lemmatizes to "amend", which the law list drops.
        cfg = CleaningConfig(stopword_lists=(bundled_stopwords("law"),))
        assert clean("amended", cfg) == []

    def test_mixed_alphanumeric_retained(self):
        cfg = CleaningConfig(stopword_lists=())
        assert clean("501c organizations", cfg) == ["501c", "organization"]

    def test_numeric_with_separators_dropped(self):
        cfg = CleaningConfig(stopword_lists=(), strip_punctuation=False)
        assert clean("1,000.50 worth", cfg) == ["worth"]

    def test_minimal_config_is_lowercase_tokenization(self):
        cfg = CleaningConfig(strip_numbers=False, strip_punctuation=False,
                             stopword_lists=(), lemmatize=False)
        assert clean("Mixed CASE 42 tokens", cfg) == ["mixed", "case", "42", "tokens"]

    def test_max_tokens_truncates(self):
        cfg = CleaningConfig(stopword_lists=(), lemmatize=False, max_tokens=2)
        assert clean("one two three four", cfg) == ["one", "two"]

    def test_special_characters_become_spaces(self):
        cfg = CleaningConfig(stopword_lists=(), lemmatize=False, strip_numbers=False)
        assert clean("a—b(c)d", cfg) == ["a", "b", "c", "d"]

    @given(st.text(alphabet="abco 123.,;-XY", max_size=80))
    @settings(max_examples=200, deadline=None)
    def test_idempotent_on_own_output(self, text):
        cfg = config_with({"the", "of", "act"})
        once = clean(text, cfg)
        assert clean(" ".join(once), cfg) == once

    @given(st.lists(st.from_regex(r"[a-z]{1,10}", fullmatch=True), max_size=30))
    @settings(max_examples=150, deadline=None)
    def test_never_longer_than_input_tokens(self, words):
        # Token-splitting punctuation aside, cleaning only removes tokens.
        text = " ".join(words)
        assert len(clean(text, default_cleaning_config())) <= len(words)


class TestLemmatize:
    @pytest.mark.parametrize(
        "token,lemma",
        [
            ("appropriations", "appropriation"),
            ("act", "act"),
            ("studies", "study"),
            ("boxes", "box"),
            ("churches", "church"),
            ("notes", "note"),
            ("classes", "class"),
            ("running", "run"),
            ("falling", "fall"),
            ("studied", "study"),
            ("planned", "plan"),
            ("congress", "congress"),
            ("status", "status"),
            ("analysis", "analysis"),
            ("gases", "gas"),
            ("ties", "tie"),
            ("was", "was"),
            ("children", "child"),
        ],
    )
    def test_known_forms(self, token, lemma):
        assert lemmatize(token) == lemma

    def test_minimum_stem_length(self):
        assert lemmatize("ins") == "ins"
        assert lemmatize("need") == "need"

    def test_exception_table_entries_are_fixed_points(self):
        table = _bundled_lemma_exceptions()
        for form, lemma in table.items():
            assert lemmatize(lemma) == lemma, f"{form} -> {lemma} is not stable"

    @given(st.from_regex(r"[a-z]{1,12}", fullmatch=True))
    @settings(max_examples=300, deadline=None)
    def test_idempotent(self, token):
        assert lemmatize(lemmatize(token)) == lemmatize(token)

    def test_custom_exception_table(self):
        assert lemmatize("data", {"data": "datum"}) == "datum"


class TestStopwordFiles:
    def test_bundled_lists_load(self):
        english = bundled_stopwords("english")
        law = bundled_stopwords("law")
        assert "the" in english.words
        assert {"section", "shall", "pursuant"} <= law.words

    def test_unknown_bundled_name(self):
        with pytest.raises(DataFormatError, match="german"):
            bundled_stopwords("german")

    def test_file_with_comments(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("# comment\nalpha\nbeta  # trailing\n\n", encoding="utf-8")
        assert load_stopword_file(path).words == frozenset({"alpha", "beta"})

    def test_uppercase_entry_rejected(self, tmp_path):
        path = tmp_path / "stop.txt"
        path.write_text("Alpha\n", encoding="utf-8")
        with pytest.raises(DataFormatError, match="line 1"):
            load_stopword_file(path)

    def test_config_validates_max_tokens(self):
        with pytest.raises(ValueError):
            CleaningConfig(max_tokens=0)

    def test_config_payload_round_trip(self):
        cfg = default_cleaning_config(max_tokens=100)
        assert CleaningConfig.from_payload(cfg.to_payload()) == cfg
