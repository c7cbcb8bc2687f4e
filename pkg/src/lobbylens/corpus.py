"""Bill ingestion, intensity-aware labeling, and deterministic splits.

Bills arrive as JSON Lines (one object per line, ``id`` and ``text``
required); lobbying counts either ride along in the JSONL or are merged from
a separate ``bill_id,count`` CSV.  A missing count means "unknown", which is
distinct from zero: unknown-count bills feed the rotation scorer instead of
the labeled datasets.
"""

from __future__ import annotations

import csv
import datetime as dt
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DataFormatError
from ._util import write_csv

BILL_TYPES = frozenset({
    "H.R.", "S.", "H.Res.", "S.Res.",
    "H.Con.Res.", "S.Con.Res.", "H.J.Res.", "S.J.Res.",
})

# Lobbying-intensity report bins; the first edge closes the zero bin and the
# huge last edge acts as +inf.
INTENSITY_BIN_EDGES = (0, 1, 5, 10, 50, 100, 200, 500, 1000, 10_000_000)

SPLIT_FRACTIONS = (0.72, 0.08, 0.20)


@dataclass(frozen=True)
class BillDocument:
    """One bill: identity, metadata, raw text, and its lobbying count.

    ``lobby_count`` is None when no disclosure record exists (the
    unlabeled pool), which is not the same as a recorded count of 0.
    """

    id: str
    raw_text: str
    word_count: int
    lobby_count: int | None = None
    bill_type: str | None = None
    congress: int | None = None
    title: str | None = None
    subject: str | None = None
    introduced_date: dt.date | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("bill id must be a non-empty string")
        if self.word_count != len(self.raw_text.split()):
            raise ValueError(
                f"bill {self.id}: word_count {self.word_count} does not match "
                f"whitespace token count {len(self.raw_text.split())}"
            )
        if self.lobby_count is not None and self.lobby_count < 0:
            raise ValueError(f"bill {self.id}: negative lobby_count")
        if self.bill_type is not None and self.bill_type not in BILL_TYPES:
            raise ValueError(f"bill {self.id}: unknown bill_type {self.bill_type!r}")
        if self.congress is not None and self.congress < 1:
            raise ValueError(f"bill {self.id}: congress must be positive")

    @classmethod
    def from_text(cls, id: str, text: str, **meta) -> "BillDocument":
        return cls(id=id, raw_text=text, word_count=len(text.split()), **meta)

    def with_lobby_count(self, count: int | None) -> "BillDocument":
        return BillDocument(
            id=self.id, raw_text=self.raw_text, word_count=self.word_count,
            lobby_count=count, bill_type=self.bill_type, congress=self.congress,
            title=self.title, subject=self.subject,
            introduced_date=self.introduced_date,
        )


@dataclass(frozen=True)
class LabelingScheme:
    """Positive-class threshold on the lobbying count."""

    scheme_id: str
    positive_min: int

    def __post_init__(self) -> None:
        if self.positive_min < 1:
            raise ValueError("positive_min must be >= 1")

    def label(self, lobby_count: int) -> int | None:
        """1 for count >= positive_min, 0 for count == 0, None for the
        exclusion band in between."""
        if lobby_count >= self.positive_min:
            return 1
        if lobby_count == 0:
            return 0
        return None


D1 = LabelingScheme("D1", 1)
D2 = LabelingScheme("D2", 10)
D3 = LabelingScheme("D3", 50)
SCHEMES: Mapping[str, LabelingScheme] = {"D1": D1, "D2": D2, "D3": D3}


@dataclass(frozen=True)
class LabeledDataset:
    scheme: LabelingScheme
    examples: tuple[tuple[str, int], ...]
    excluded_ids: tuple[str, ...]

    @property
    def n_positive(self) -> int:
        return sum(label for _, label in self.examples)

    @property
    def n_negative(self) -> int:
        return len(self.examples) - self.n_positive

    def labels_by_id(self) -> dict[str, int]:
        return dict(self.examples)


@dataclass(frozen=True)
class DatasetSplit:
    train_ids: tuple[str, ...]
    val_ids: tuple[str, ...]
    test_ids: tuple[str, ...]
    seed: int
    fractions: tuple[float, float, float] = SPLIT_FRACTIONS


def _parse_date(value, line_no: int) -> dt.date:
    try:
        return dt.date.fromisoformat(value)
    except (TypeError, ValueError):
        raise DataFormatError(
            f"line {line_no}: introduced_date {value!r} is not an ISO-8601 date"
        ) from None


def ingest_corpus(path: str | Path) -> list[BillDocument]:
    """Read a JSONL bills file into documents.

    Each line must be a JSON object with string ``id`` and ``text``;
    duplicate ids and malformed lines raise :class:`DataFormatError`
    naming the offender.
    """
    path = Path(path)
    docs: list[BillDocument] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataFormatError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            if not isinstance(obj, dict):
                raise DataFormatError(f"line {line_no}: expected a JSON object")
            for key in ("id", "text"):
                if key not in obj or not isinstance(obj[key], str):
                    raise DataFormatError(f"line {line_no}: missing string field {key!r}")
            bill_id = obj["id"]
            if bill_id in seen:
                raise DataFormatError(f"line {line_no}: duplicate bill id {bill_id!r}")
            seen.add(bill_id)
            date = obj.get("introduced_date")
            count = obj.get("lobby_count")
            if count is not None and (not isinstance(count, int) or isinstance(count, bool)):
                raise DataFormatError(f"line {line_no}: lobby_count must be an integer")
            try:
                doc = BillDocument.from_text(
                    bill_id,
                    obj["text"],
                    lobby_count=count,
                    bill_type=obj.get("bill_type"),
                    congress=obj.get("congress"),
                    title=obj.get("title"),
                    subject=obj.get("subject"),
                    introduced_date=_parse_date(date, line_no) if date is not None else None,
                )
            except ValueError as exc:
                raise DataFormatError(f"line {line_no}: {exc}") from None
            docs.append(doc)
    return docs


def merge_lobby_counts(corpus: Sequence[BillDocument], path: str | Path) -> list[BillDocument]:
    """Merge a ``bill_id,count`` CSV into the corpus by id.

    A CSV value overrides any count already present in the JSONL.  Ids in
    the CSV that do not appear in the corpus are ignored (the disclosure
    dump may cover more bills than the text dump).
    """
    path = Path(path)
    counts: dict[str, int] = {}
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["bill_id", "count"]:
            raise DataFormatError(f"{path}: expected CSV header 'bill_id,count'")
        for row_no, row in enumerate(reader, 2):
            if not row:
                continue
            if len(row) < 2:
                raise DataFormatError(f"{path}: row {row_no}: expected two columns")
            try:
                value = int(row[1])
            except ValueError:
                raise DataFormatError(
                    f"{path}: row {row_no}: count {row[1]!r} is not an integer"
                ) from None
            if value < 0:
                raise DataFormatError(f"{path}: row {row_no}: negative count")
            counts[row[0]] = value
    return [
        doc.with_lobby_count(counts[doc.id]) if doc.id in counts else doc
        for doc in corpus
    ]


def apply_length_filter(corpus: Sequence[BillDocument], max_words: int) -> list[BillDocument]:
    """Keep documents with word_count <= max_words, preserving order."""
    if max_words < 1:
        raise ValueError("max_words must be >= 1")
    return [doc for doc in corpus if doc.word_count <= max_words]


def build_labeled_dataset(
    corpus: Sequence[BillDocument], scheme: LabelingScheme
) -> LabeledDataset:
    """Label every document; counts inside (0, positive_min) are excluded.

    Every document must carry a known lobby_count.
    """
    examples: list[tuple[str, int]] = []
    excluded: list[str] = []
    for doc in corpus:
        if doc.lobby_count is None:
            raise ValueError(f"bill {doc.id} has unknown lobby_count; cannot label")
        label = scheme.label(doc.lobby_count)
        if label is None:
            excluded.append(doc.id)
        else:
            examples.append((doc.id, label))
    return LabeledDataset(scheme=scheme, examples=tuple(examples), excluded_ids=tuple(excluded))


def _largest_remainder(ideals: Sequence[float], total: int) -> list[int]:
    # Integer allocation summing exactly to `total`, each part within one of
    # its ideal share.  Ties on the fractional part favor the earlier class.
    base = [int(np.floor(x)) for x in ideals]
    short = total - sum(base)
    order = sorted(range(len(ideals)), key=lambda i: (-(ideals[i] - base[i]), i))
    for i in order[:short]:
        base[i] += 1
    return base


def split_dataset(
    labeled: LabeledDataset,
    seed: int,
    fractions: tuple[float, float, float] = SPLIT_FRACTIONS,
) -> DatasetSplit:
    """Deterministic label-stratified train/validation/test split.

    Train and validation sizes are rounded to the nearest integer and test
    takes the remainder, so the three parts always form a partition.
    Within each part the class allocation follows the largest-remainder
    method, which keeps every split within one example of the exactly
    proportional class mix.
    """
    n = len(labeled.examples)
    if n < 10:
        raise ValueError(f"need at least 10 examples to split, got {n}")
    f_train, f_val, f_test = fractions
    if abs(f_train + f_val + f_test - 1.0) > 1e-9 or min(fractions) < 0:
        raise ValueError(f"fractions must be non-negative and sum to 1, got {fractions}")
    n_train = int(round(f_train * n))
    n_val = int(round(f_val * n))
    n_test = n - n_train - n_val

    rng = np.random.default_rng(seed)
    by_label: dict[int, list[str]] = {1: [], 0: []}
    for bill_id, label in labeled.examples:
        by_label[label].append(bill_id)
    for ids in by_label.values():
        rng.shuffle(ids)

    class_sizes = [len(by_label[1]), len(by_label[0])]
    train_alloc = _largest_remainder([f_train * c for c in class_sizes], n_train)
    remaining = [c - t for c, t in zip(class_sizes, train_alloc)]
    val_ideals = [
        f_val / (f_val + f_test) * r if (f_val + f_test) > 0 else 0.0 for r in remaining
    ]
    val_alloc = _largest_remainder(val_ideals, n_val)

    train: list[str] = []
    val: list[str] = []
    test: list[str] = []
    for cls, pool in enumerate((by_label[1], by_label[0])):
        a, b = train_alloc[cls], train_alloc[cls] + val_alloc[cls]
        train.extend(pool[:a])
        val.extend(pool[a:b])
        test.extend(pool[b:])
    assert len(train) == n_train and len(val) == n_val and len(test) == n_test
    return DatasetSplit(tuple(train), tuple(val), tuple(test), seed=seed)


@dataclass(frozen=True)
class IntensityHistogram:
    """Per-bin bill counts plus a separate bucket for unknown counts."""

    bins: tuple[tuple[str, int], ...]
    unknown: int

    def as_mapping(self) -> dict[str, int]:
        return dict(self.bins)


def _bin_label(lo: int, hi: int | None, first: bool) -> str:
    if first:
        return "0" if hi == 0 else f"[0,{hi}]"
    if hi is None:
        return f"({lo},inf]"
    return f"({lo},{hi}]"


def intensity_histogram(
    corpus: Sequence[BillDocument],
    bin_edges: Sequence[int] = INTENSITY_BIN_EDGES,
) -> IntensityHistogram:
    """Bin known lobbying counts: [0, e0], then (e_i, e_{i+1}].

    Counts above the last edge land in an overflow bin that is appended
    only when needed; unknown counts are tallied separately.
    """
    edges = list(bin_edges)
    if len(edges) < 1 or any(a >= b for a, b in zip(edges, edges[1:])):
        raise ValueError(f"bin edges must be strictly ascending, got {bin_edges}")
    labels = [_bin_label(0, edges[0], first=True)]
    labels += [_bin_label(lo, hi, first=False) for lo, hi in zip(edges, edges[1:])]
    counts = [0] * len(labels)
    overflow = 0
    unknown = 0
    for doc in corpus:
        c = doc.lobby_count
        if c is None:
            unknown += 1
        elif c <= edges[0]:
            counts[0] += 1
        elif c > edges[-1]:
            overflow += 1
        else:
            # First edge strictly below c; bisect over the (lo, hi] bins.
            pos = int(np.searchsorted(np.asarray(edges), c, side="left"))
            counts[pos] += 1
    bins = list(zip(labels, counts))
    if overflow:
        bins.append((_bin_label(edges[-1], None, first=False), overflow))
    return IntensityHistogram(bins=tuple(bins), unknown=unknown)


def write_histogram_csv(path: str | Path, histogram: IntensityHistogram) -> None:
    rows: list[tuple[str, int]] = list(histogram.bins)
    rows.append(("unknown", histogram.unknown))
    write_csv(path, ("bin", "count"), rows)
