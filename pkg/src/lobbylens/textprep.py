"""Deterministic cleaning of raw bill text into token sequences.

The pipeline order is fixed: lowercase, replace punctuation and special
characters with spaces, tokenize on whitespace, drop purely numeric tokens,
drop stopwords, lemmatize, re-drop stopwords (a lemma may itself be a
stopword), and finally truncate to ``max_tokens``.  Everything here is a
pure function of its inputs, so documents can be cleaned in parallel.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DataFormatError

TokenSequence = list[str]

# Any character outside [a-z0-9] counts as punctuation / special after
# lowercasing; it is replaced by a space before tokenization.
_PUNCT_LOWER = re.compile(r"[^a-z0-9\s]")
_PUNCT_ANY = re.compile(r"[^a-zA-Z0-9\s]")

# Purely numeric tokens, allowing decimal points and digit-group commas.
_NUMERIC = re.compile(r"[0-9][0-9.,]*|[.,]+[0-9][0-9.,]*")

_VOWELS = set("aeiou")


@dataclass(frozen=True)
class StopwordList:
    """A named set of lowercase stopwords."""

    name: str
    words: frozenset[str]

    def __post_init__(self) -> None:
        bad = [w for w in self.words if w != w.lower() or not w or w.split() != [w]]
        if bad:
            raise DataFormatError(
                f"stopword list {self.name!r} has non-lowercase or blank entries: {bad[:5]}"
            )


@dataclass(frozen=True)
class CleaningConfig:
    """Switches for the fixed cleaning pipeline.

    ``stopword_lists`` is ordered only for reporting purposes; filtering uses
    the union of all active lists.
    """

    lowercase: bool = True
    strip_numbers: bool = True
    strip_punctuation: bool = True
    stopword_lists: tuple[StopwordList, ...] = ()
    lemmatize: bool = True
    max_tokens: int | None = None

    def __post_init__(self) -> None:
        if self.max_tokens is not None and self.max_tokens < 1:
            raise ValueError(f"max_tokens must be >= 1, got {self.max_tokens}")

    @property
    def stopwords(self) -> frozenset[str]:
        out: set[str] = set()
        for lst in self.stopword_lists:
            out |= lst.words
        return frozenset(out)

    def to_payload(self) -> dict:
        """JSON-serializable representation (used for hashing and model files)."""
        return {
            "lowercase": self.lowercase,
            "strip_numbers": self.strip_numbers,
            "strip_punctuation": self.strip_punctuation,
            "stopword_lists": [
                {"name": lst.name, "words": sorted(lst.words)}
                for lst in self.stopword_lists
            ],
            "lemmatize": self.lemmatize,
            "max_tokens": self.max_tokens,
        }

    @classmethod
    def from_payload(cls, payload: Mapping) -> "CleaningConfig":
        lists = tuple(
            StopwordList(entry["name"], frozenset(entry["words"]))
            for entry in payload.get("stopword_lists", ())
        )
        return cls(
            lowercase=payload["lowercase"],
            strip_numbers=payload["strip_numbers"],
            strip_punctuation=payload["strip_punctuation"],
            stopword_lists=lists,
            lemmatize=payload["lemmatize"],
            max_tokens=payload.get("max_tokens"),
        )


def load_stopword_file(path: str | Path, name: str | None = None) -> StopwordList:
    """Read a stopword file: one token per line, ``#`` comments allowed."""
    path = Path(path)
    words = _parse_stopword_lines(path.read_text(encoding="utf-8").splitlines(), str(path))
    return StopwordList(name or path.stem, words)


def bundled_stopwords(name: str) -> StopwordList:
    """Return one of the stopword lists shipped with the package.

    Known names: ``english`` (common function words) and ``law``
    (boilerplate terms of US legislative drafting).
    """
    try:
        text = resources.files("lobbylens.data").joinpath(f"stopwords_{name}.txt").read_text("utf-8")
    except FileNotFoundError:
        raise DataFormatError(f"no bundled stopword list named {name!r}") from None
    return StopwordList(name, _parse_stopword_lines(text.splitlines(), f"bundled:{name}"))


def default_cleaning_config(max_tokens: int | None = None) -> CleaningConfig:
    """All switches on, with the bundled english and law stopword lists."""
    return CleaningConfig(
        stopword_lists=(bundled_stopwords("english"), bundled_stopwords("law")),
        max_tokens=max_tokens,
    )


def _parse_stopword_lines(lines: Iterable[str], source: str) -> frozenset[str]:
    words = set()
    for i, line in enumerate(lines, 1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        if entry != entry.lower() or len(entry.split()) != 1:
            raise DataFormatError(f"{source}: line {i}: bad stopword entry {entry!r}")
        words.add(entry)
    return frozenset(words)


@lru_cache(maxsize=1)
def _bundled_lemma_exceptions() -> dict[str, str]:
    text = resources.files("lobbylens.data").joinpath("lemma_exceptions.txt").read_text("utf-8")
    table: dict[str, str] = {}
    for i, line in enumerate(text.splitlines(), 1):
        entry = line.split("#", 1)[0].strip()
        if not entry:
            continue
        parts = entry.split()
        if len(parts) != 2:
            raise DataFormatError(f"lemma exceptions: line {i}: expected 'form lemma'")
        table[parts[0]] = parts[1]
    return table


def _undouble(stem: str) -> str:
    # Porter-style: undo consonant doubling except for l, s, z
    # (running -> run, but falling -> fall).
    if (
        len(stem) >= 2
        and stem[-1] == stem[-2]
        and stem[-1] not in _VOWELS
        and stem[-1] not in "lsz"
    ):
        return stem[:-1]
    return stem


def lemmatize(token: str, exceptions: Mapping[str, str] | None = None) -> str:
    """Reduce a lowercase token to a base form.

    Checks the exception table first, then applies suffix rules for plural
    -s/-es/-ies and verbal -ing/-ed, each guarded by a minimum stem length
    of 3 characters.  Unknown forms are returned unchanged.  Every output
    is a fixed point, so lemmatization is idempotent.
    """
    table = _bundled_lemma_exceptions() if exceptions is None else exceptions
    if token in table:
        return table[token]
    n = len(token)
    if token.endswith("ies") and n - 3 >= 3:
        return token[:-3] + "y"
    if token.endswith("es") and n - 2 >= 3:
        stem = token[:-2]
        if stem.endswith(("s", "x", "z", "ch", "sh")):
            return stem
    if (
        token.endswith("s")
        and not token.endswith(("ss", "us", "is"))
        and n - 1 >= 3
    ):
        return token[:-1]
    if token.endswith("ied") and n - 3 >= 3:
        return token[:-3] + "y"
    if token.endswith("ing") and n - 3 >= 3:
        return _undouble(token[:-3])
    if token.endswith("ed") and n - 2 >= 3:
        return _undouble(token[:-2])
    return token


def _is_numeric(token: str) -> bool:
    return _NUMERIC.fullmatch(token) is not None


def clean(text: str, config: CleaningConfig) -> TokenSequence:
    """Run the full cleaning pipeline on one document.

    An empty result is valid (e.g. a document of only stopwords).
    """
    s = text.lower() if config.lowercase else text
    if config.strip_punctuation:
        pattern = _PUNCT_LOWER if config.lowercase else _PUNCT_ANY
        s = pattern.sub(" ", s)
    tokens = s.split()
    if config.strip_numbers:
        tokens = [t for t in tokens if not _is_numeric(t)]
    stop = config.stopwords
    if stop:
        tokens = [t for t in tokens if t not in stop]
    if config.lemmatize:
        tokens = [lemmatize(t) for t in tokens]
        if stop:
            tokens = [t for t in tokens if t not in stop]
    if config.max_tokens is not None:
        tokens = tokens[: config.max_tokens]
    return tokens
