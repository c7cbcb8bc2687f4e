"""Synthetic bill corpora with planted, intensity-scaled signal.

Documents draw tokens from a Zipf-weighted background vocabulary.  A block
of mid-frequency background terms doubles as the "signal" set: in a bill
with lobbying count c, each token position is replaced by a random signal
term with probability ``signal_rate * ln(1 + c)``.  Non-lobbied bills
(c = 0) therefore contain signal terms only at their natural background
rate, and the planted separation grows with lobbying intensity.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .corpus import BillDocument

# Nonzero intensity bins shaped like the observed disclosure-count
# distribution: (lo, hi) inclusive ranges with relative weights.
INTENSITY_BINS = (
    ((1, 5), 18511),
    ((6, 10), 7338),
    ((11, 50), 14924),
    ((51, 100), 5072),
    ((101, 200), 3836),
    ((201, 500), 3003),
    ((501, 1000), 1136),
    ((1001, 10000), 893),
)

DEFAULT_SUBJECTS = (
    "Energy",
    "Health",
    "Taxation",
    "Commerce",
    "Education",
    "Agriculture and Food",
)

_BILL_TYPE_CYCLE = ("H.R.", "S.", "H.Res.", "S.Res.", "H.Con.Res.",
                    "S.Con.Res.", "H.J.Res.", "S.J.Res.")


@dataclass(frozen=True)
class SynthConfig:
    n_docs: int = 3000
    vocab_size: int = 5000
    doc_words: tuple[int, int] = (300, 600)
    zipf_exponent: float = 1.1
    n_signal_terms: int = 40
    signal_rank_start: int = 200
    signal_rate: float = 0.006
    max_inject_prob: float = 0.5
    subjects: tuple[str, ...] = DEFAULT_SUBJECTS
    start_year: int = 1991
    end_year: int = 2018


def _zipf_probs(vocab_size: int, exponent: float) -> np.ndarray:
    weights = 1.0 / np.arange(1, vocab_size + 1, dtype=np.float64) ** exponent
    return weights / weights.sum()


def _term_names(vocab_size: int) -> list[str]:
    return [f"w{k:04d}" for k in range(vocab_size)]


def sample_lobby_counts(rng: np.random.Generator, n: int) -> np.ndarray:
    """Draw positive counts from the intensity bins (weights as observed)."""
    weights = np.array([w for _, w in INTENSITY_BINS], dtype=np.float64)
    weights /= weights.sum()
    bins = rng.choice(len(INTENSITY_BINS), size=n, p=weights)
    lows = np.array([lo for (lo, _), _ in INTENSITY_BINS])
    highs = np.array([hi for (_, hi), _ in INTENSITY_BINS])
    return rng.integers(lows[bins], highs[bins] + 1)


def inject_probability(lobby_count: int, rate: float, cap: float = 0.5) -> float:
    """Per-token signal probability: rate * ln(1 + count), capped."""
    return min(cap, rate * float(np.log1p(lobby_count)))


def _compose_texts(
    rng: np.random.Generator,
    cfg: SynthConfig,
    lengths: np.ndarray,
    inject_probs: np.ndarray,
    extra_token: Sequence[str | None],
) -> list[str]:
    terms = _term_names(cfg.vocab_size)
    probs = _zipf_probs(cfg.vocab_size, cfg.zipf_exponent)
    total = int(lengths.sum())
    token_ids = rng.choice(cfg.vocab_size, size=total, p=probs)
    per_token_p = np.repeat(inject_probs, lengths)
    replace = rng.random(total) < per_token_p
    n_replace = int(replace.sum())
    token_ids[replace] = cfg.signal_rank_start + rng.integers(
        0, cfg.n_signal_terms, size=n_replace
    )
    texts: list[str] = []
    offset = 0
    for i, length in enumerate(lengths):
        ids = token_ids[offset : offset + length]
        offset += length
        words = [terms[t] for t in ids]
        marker = extra_token[i]
        if marker is not None:
            # Sprinkle the subject marker at the same per-token rate.
            hits = rng.random(length) < inject_probs[i]
            for pos in np.nonzero(hits)[0]:
                words[pos] = marker
        texts.append(" ".join(words))
    return texts


def make_intensity_corpus(
    n_docs: int = 3000,
    seed: int = 0,
    config: SynthConfig | None = None,
    subject_signal: Mapping[str, str] | None = None,
) -> list[BillDocument]:
    """Corpus for intensity experiments: half non-lobbied, half lobbied.

    Even-indexed documents get lobby_count 0; odd-indexed documents draw a
    positive count from the intensity bins.  ``subject_signal`` optionally
    maps a subject name to a marker token planted in that subject's lobbied
    bills (useful for interpretation demos).
    """
    cfg = config or SynthConfig(n_docs=n_docs)
    if cfg.n_docs != n_docs:
        cfg = SynthConfig(**{**cfg.__dict__, "n_docs": n_docs})
    rng = np.random.default_rng(seed)
    counts = np.zeros(n_docs, dtype=np.int64)
    odd = np.arange(n_docs) % 2 == 1
    counts[odd] = sample_lobby_counts(rng, int(odd.sum()))
    lengths = rng.integers(cfg.doc_words[0], cfg.doc_words[1] + 1, size=n_docs)
    inject = np.array(
        [inject_probability(c, cfg.signal_rate, cfg.max_inject_prob) for c in counts]
    )
    # Subjects advance every other document so each subject receives both
    # the non-lobbied (even) and lobbied (odd) member of a pair.
    subjects = [cfg.subjects[(i // 2) % len(cfg.subjects)] for i in range(n_docs)]
    markers: list[str | None] = [None] * n_docs
    if subject_signal:
        for i in range(n_docs):
            if counts[i] > 0 and subjects[i] in subject_signal:
                markers[i] = subject_signal[subjects[i]]
    texts = _compose_texts(rng, cfg, lengths, inject, markers)

    years = rng.integers(cfg.start_year, cfg.end_year + 1, size=n_docs)
    months = rng.integers(1, 13, size=n_docs)
    days = rng.integers(1, 29, size=n_docs)
    docs = []
    for i in range(n_docs):
        bill_type = _BILL_TYPE_CYCLE[i % len(_BILL_TYPE_CYCLE)]
        docs.append(
            BillDocument.from_text(
                id=f"{bill_type}{i}",
                text=texts[i],
                lobby_count=int(counts[i]),
                bill_type=bill_type,
                congress=int(101 + (years[i] - 1989) // 2),
                title=f"Synthetic Measure {i}",
                subject=subjects[i],
                introduced_date=dt.date(int(years[i]), int(months[i]), int(days[i])),
            )
        )
    return docs


def make_unlabeled_pool(
    n_docs: int,
    seed: int = 0,
    config: SynthConfig | None = None,
    lobbied_like_fraction: float = 0.3,
) -> tuple[list[BillDocument], np.ndarray]:
    """Pool of bills without disclosure records, plus their hidden counts.

    A ``lobbied_like_fraction`` of the pool is generated with the same
    signal injection as intensively lobbied bills; the rest look
    non-lobbied.  The hidden counts are returned for demo narration; the
    documents themselves carry lobby_count None.
    """
    cfg = config or SynthConfig(n_docs=n_docs)
    rng = np.random.default_rng(seed)
    hidden = np.zeros(n_docs, dtype=np.int64)
    lobbied = rng.random(n_docs) < lobbied_like_fraction
    hidden[lobbied] = sample_lobby_counts(rng, int(lobbied.sum()))
    lengths = rng.integers(cfg.doc_words[0], cfg.doc_words[1] + 1, size=n_docs)
    inject = np.array(
        [inject_probability(c, cfg.signal_rate, cfg.max_inject_prob) for c in hidden]
    )
    texts = _compose_texts(rng, cfg, lengths, inject, [None] * n_docs)
    years = rng.integers(cfg.start_year, cfg.end_year + 1, size=n_docs)
    months = rng.integers(1, 13, size=n_docs)
    days = rng.integers(1, 29, size=n_docs)
    subjects = [cfg.subjects[i % len(cfg.subjects)] for i in range(n_docs)]
    docs = []
    for i in range(n_docs):
        bill_type = _BILL_TYPE_CYCLE[i % len(_BILL_TYPE_CYCLE)]
        docs.append(
            BillDocument.from_text(
                id=f"U-{bill_type}{i}",
                text=texts[i],
                lobby_count=None,
                bill_type=bill_type,
                congress=int(101 + (years[i] - 1989) // 2),
                title=f"Undisclosed Measure {i}",
                subject=subjects[i],
                introduced_date=dt.date(int(years[i]), int(months[i]), int(days[i])),
            )
        )
    return docs, hidden
