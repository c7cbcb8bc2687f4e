"""Experiment commands driven by one JSON config, with flag overrides.

Commands: ``ingest``, ``train-eval``, ``explain``, ``score-unlabeled``.
Every command writes its CSV/plot artifacts plus a ``manifest.json`` holding
the effective-config hash, the seed, and per-artifact checksums, so a rerun
with the same config and seed is verifiably identical.

Exit codes: 0 success, 2 usage or contract error, 1 internal failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from ._util import sha256_file, stable_hash, write_csv
from .corpus import (
    SCHEMES,
    BillDocument,
    LabelingScheme,
    apply_length_filter,
    build_labeled_dataset,
    ingest_corpus,
    intensity_histogram,
    merge_lobby_counts,
    split_dataset,
    write_histogram_csv,
)
from .errors import ConfigError, LobbyLensError
from .evaluation import ScoredSet, best_threshold, grid_search, roc_auc
from .features import write_vocabulary_csv
from .interpret import subject_report, top_features, write_feature_report_csv
from .models import load_model, save_model, write_predictions_csv
from .pipeline import PipelineSpec, score_token_docs
from .textprep import CleaningConfig, bundled_stopwords, clean, load_stopword_file
from .unlabeled import (
    RotationConfig,
    filter_pool,
    quarter_trend,
    rotation_score,
    subject_table,
    top_k_report,
    write_quarter_csv,
    write_scores_csv,
    write_subject_csv,
    write_top_bills_csv,
)

import numpy as np

_DEFAULTS: dict[str, Any] = {
    "counts_path": None,
    "scheme": "D1",
    "max_words": 150_000,
    "cleaning": {
        "lowercase": True,
        "strip_numbers": True,
        "strip_punctuation": True,
        "stopwords": ["english", "law"],
        "lemmatize": True,
        "max_tokens": None,
    },
    "features": {"kind": "tfidf", "ngram_range": [1, 2], "max_features": 25_000},
    "model": {"kind": "logistic", "params": {}, "grid": {}},
    "ngram_search": None,
    "k": 25,
    "subject": None,
    "model_path": None,
    "rotation": {
        "num_batches": 5,
        "positive_scheme": "D3",
        "min_year": 1990,
        "min_words": 2000,
        "trend_thresholds": [0.5, 0.9],
        "subject_thresholds": [0.5, 0.75, 0.9],
    },
}

_DEFAULT_GRIDS = {
    "logistic": {"C": [0.1, 1.0, 10.0]},
    "forest": {"n_trees": [100]},
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated effective configuration (defaults, file, then flags)."""

    effective: dict

    @property
    def bills_path(self) -> Path:
        return Path(self.effective["bills_path"])

    @property
    def counts_path(self) -> Path | None:
        value = self.effective["counts_path"]
        return Path(value) if value else None

    @property
    def out_dir(self) -> Path:
        return Path(self.effective["out_dir"])

    @property
    def seed(self) -> int:
        return int(self.effective["seed"])

    @property
    def scheme(self) -> LabelingScheme:
        return SCHEMES[self.effective["scheme"]]

    @property
    def k(self) -> int:
        return int(self.effective["k"])

    @property
    def config_hash(self) -> str:
        return stable_hash(self.effective)

    def cleaning_config(self) -> CleaningConfig:
        section = self.effective["cleaning"]
        lists = []
        for entry in section["stopwords"]:
            if entry in ("english", "law"):
                lists.append(bundled_stopwords(entry))
            else:
                path = Path(entry)
                if not path.exists():
                    raise ConfigError(f"stopword file does not exist: {entry}")
                lists.append(load_stopword_file(path))
        return CleaningConfig(
            lowercase=section["lowercase"],
            strip_numbers=section["strip_numbers"],
            strip_punctuation=section["strip_punctuation"],
            stopword_lists=tuple(lists),
            lemmatize=section["lemmatize"],
            max_tokens=section["max_tokens"],
        )

    def pipeline_spec(self) -> PipelineSpec:
        features = self.effective["features"]
        model = self.effective["model"]
        return PipelineSpec(
            cleaning=self.cleaning_config(),
            ngram_range=tuple(features["ngram_range"]),
            max_features=int(features["max_features"]),
            feature_kind=features["kind"],
            model_kind=model["kind"],
            model_params=dict(model.get("params", {})),
            seed=self.seed,
        )

    def hyperparameter_grid(self) -> dict:
        grid = dict(self.effective["model"].get("grid") or {})
        search = self.effective.get("ngram_search")
        if search:
            grid["ngram_range"] = [tuple(r) for r in search]
        if not grid:
            grid = dict(_DEFAULT_GRIDS[self.effective["model"]["kind"]])
        return grid

    def rotation_config(self) -> RotationConfig:
        section = self.effective["rotation"]
        return RotationConfig(
            num_batches=int(section["num_batches"]),
            seed=self.seed,
            positive_scheme=SCHEMES[section["positive_scheme"]],
            min_year=int(section["min_year"]),
            min_words=int(section["min_words"]),
        )


def _merge_section(base: dict, override: Mapping) -> dict:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = {**merged[key], **value}
        else:
            merged[key] = value
    return merged


def load_config(path: str | Path, overrides: Mapping[str, Any] | None = None) -> ExperimentConfig:
    """Read the JSON config, apply flag overrides, and validate."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file does not exist: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path}: config must be a JSON object")
    effective = _merge_section(_DEFAULTS, raw)
    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == "model_kind":
            effective["model"] = {**effective["model"], "kind": value}
        elif key == "feature_kind":
            effective["features"] = {**effective["features"], "kind": value}
        else:
            effective[key] = value
    return _validate_config(effective)


def _validate_config(effective: dict) -> ExperimentConfig:
    for required in ("bills_path", "out_dir"):
        if not effective.get(required):
            raise ConfigError(f"config is missing required key {required!r}")
    if "seed" not in effective or isinstance(effective["seed"], bool) or not isinstance(
        effective["seed"], int
    ):
        raise ConfigError("config must set an integer 'seed' (no wall-clock defaults)")
    if not Path(effective["bills_path"]).exists():
        raise ConfigError(f"bills file does not exist: {effective['bills_path']}")
    if effective["counts_path"] and not Path(effective["counts_path"]).exists():
        raise ConfigError(f"counts file does not exist: {effective['counts_path']}")
    if effective["scheme"] not in SCHEMES:
        raise ConfigError(f"unknown scheme {effective['scheme']!r} (expected D1, D2, or D3)")
    if effective["features"]["kind"] not in ("bow", "tfidf"):
        raise ConfigError(f"unknown feature kind {effective['features']['kind']!r}")
    if effective["model"]["kind"] not in ("logistic", "forest"):
        raise ConfigError(f"unknown model kind {effective['model']['kind']!r}")
    if int(effective["k"]) <= 0:
        raise ConfigError("k must be positive")
    if effective["rotation"]["positive_scheme"] not in SCHEMES:
        raise ConfigError(
            f"unknown rotation positive_scheme {effective['rotation']['positive_scheme']!r}"
        )
    return ExperimentConfig(effective=effective)


def _load_corpus(config: ExperimentConfig) -> list[BillDocument]:
    corpus = ingest_corpus(config.bills_path)
    if not corpus:
        raise ConfigError(f"bills file {config.bills_path} contains no documents")
    if config.counts_path is not None:
        corpus = merge_lobby_counts(corpus, config.counts_path)
    return corpus


def _write_manifest(config: ExperimentConfig, command: str, artifacts: dict[str, Path]) -> Path:
    manifest = {
        "command": command,
        "seed": config.seed,
        "config_sha256": config.config_hash,
        "effective_config": config.effective,
        "artifacts": {name: sha256_file(p) for name, p in sorted(artifacts.items())},
    }
    out = config.out_dir / "manifest.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(manifest, indent=2, sort_keys=True), encoding="utf-8")
    return out


def cmd_ingest(config: ExperimentConfig) -> dict[str, Path]:
    """Corpus summary tables, intensity histogram, and length distribution."""
    from .plots import plot_word_count_histogram

    corpus = _load_corpus(config)
    filtered = apply_length_filter(corpus, int(config.effective["max_words"]))
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)

    type_counts = Counter(doc.bill_type or "(none)" for doc in filtered)
    types_csv = out / "bill_types.csv"
    write_csv(types_csv, ("bill_type", "count"), sorted(type_counts.items()))

    per_subject: dict[str, list[int]] = {}
    for doc in filtered:
        row = per_subject.setdefault(doc.subject or "(none)", [0, 0, 0, 0])
        row[0] += 1
        if doc.lobby_count is None:
            row[3] += 1
        elif doc.lobby_count > 0:
            row[1] += 1
        else:
            row[2] += 1
    subjects_csv = out / "subjects.csv"
    write_csv(
        subjects_csv,
        ("subject", "n_bills", "n_lobbied", "n_not_lobbied", "n_unknown"),
        [(s, *vals) for s, vals in sorted(per_subject.items())],
    )

    histogram_csv = out / "intensity_histogram.csv"
    write_histogram_csv(histogram_csv, intensity_histogram(filtered))

    n_known = sum(1 for d in filtered if d.lobby_count is not None)
    summary_csv = out / "summary.csv"
    write_csv(
        summary_csv,
        ("metric", "value"),
        [
            ("n_documents_ingested", len(corpus)),
            ("n_after_length_filter", len(filtered)),
            ("n_dropped_by_length", len(corpus) - len(filtered)),
            ("n_known_lobby_count", n_known),
            ("n_unknown_lobby_count", len(filtered) - n_known),
        ],
    )

    plot_path = out / "word_counts.png"
    plot_word_count_histogram(plot_path, [d.word_count for d in filtered])

    artifacts = {
        "bill_types.csv": types_csv,
        "subjects.csv": subjects_csv,
        "intensity_histogram.csv": histogram_csv,
        "summary.csv": summary_csv,
        "word_counts.png": plot_path,
    }
    artifacts["manifest.json"] = _write_manifest(config, "ingest", artifacts)
    return artifacts


def cmd_train_eval(config: ExperimentConfig) -> dict[str, Path]:
    """Split, tune on validation AUC, pick the accuracy threshold, test once."""
    corpus = _load_corpus(config)
    filtered = apply_length_filter(corpus, int(config.effective["max_words"]))
    known = [d for d in filtered if d.lobby_count is not None]
    if not known:
        raise ConfigError("no bills with known lobby_count; cannot build labeled data")
    scheme = config.scheme
    labeled = build_labeled_dataset(known, scheme)
    if labeled.n_positive == 0:
        raise ConfigError(f"no positive examples under scheme {scheme.scheme_id}")
    if labeled.n_negative == 0:
        raise ConfigError(f"no negative examples under scheme {scheme.scheme_id}")
    split = split_dataset(labeled, seed=config.seed)

    spec = config.pipeline_spec()
    by_id = {d.id: d for d in known}
    tokens = {
        bill_id: clean(by_id[bill_id].raw_text, spec.cleaning)
        for bill_id, _ in labeled.examples
    }
    label_of = labeled.labels_by_id()

    def docs_and_labels(ids: Sequence[str]):
        return [tokens[i] for i in ids], [label_of[i] for i in ids]

    train_docs, train_labels = docs_and_labels(split.train_ids)
    val_docs, val_labels = docs_and_labels(split.val_ids)
    test_docs, test_labels = docs_and_labels(split.test_ids)

    result = grid_search(
        config.hyperparameter_grid(),
        train_docs, train_labels,
        val_docs, val_labels,
        spec,
        trained_on=scheme.scheme_id,
    )
    classifier = result.best_model

    val_scores = np.asarray(score_token_docs(classifier, val_docs))
    chosen = best_threshold(ScoredSet(val_scores, np.asarray(val_labels)))
    test_scores = np.asarray(score_token_docs(classifier, test_docs))
    test_set = ScoredSet(test_scores, np.asarray(test_labels))
    test_auc = roc_auc(test_set)
    test_acc = float(np.mean((test_scores >= chosen.threshold) == (np.asarray(test_labels) == 1)))

    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    report_csv = out / "report.csv"
    write_csv(
        report_csv,
        ("scheme", "model", "feature_kind", "params", "val_auc", "val_acc",
         "test_auc", "test_acc", "threshold"),
        [(
            scheme.scheme_id,
            spec.model_kind,
            spec.feature_kind,
            json.dumps(result.best_params, sort_keys=True, default=str),
            result.best_val_auc,
            chosen.accuracy_at_threshold,
            test_auc,
            test_acc,
            chosen.threshold,
        )],
    )
    trials_csv = out / "trials.csv"
    write_csv(
        trials_csv,
        ("trial", "params", "val_auc", "error"),
        [
            (i, json.dumps(t.params, sort_keys=True, default=str),
             t.val_auc if t.val_auc is not None else "", t.error or "")
            for i, t in enumerate(result.trials)
        ],
    )
    model_path = out / "model.json"
    save_model(classifier, model_path)
    vocab_csv = out / "vocabulary.csv"
    pipe = classifier.pipeline
    write_vocabulary_csv(vocab_csv, pipe.vocabulary,
                         idf=pipe.tfidf.idf if pipe.tfidf is not None else None)
    predictions_csv = out / "test_predictions.csv"
    write_predictions_csv(
        predictions_csv,
        zip(split.test_ids, (float(s) for s in test_scores)),
    )

    artifacts = {
        "report.csv": report_csv,
        "trials.csv": trials_csv,
        "model.json": model_path,
        "vocabulary.csv": vocab_csv,
        "test_predictions.csv": predictions_csv,
    }
    artifacts["manifest.json"] = _write_manifest(config, "train-eval", artifacts)
    return artifacts


def cmd_explain(config: ExperimentConfig, model_path: str | Path | None = None,
                subject: str | None = None) -> dict[str, Path]:
    """Feature report for a saved model, or a fresh per-subject model."""
    from .plots import plot_feature_report

    subject = subject if subject is not None else config.effective.get("subject")
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    if subject:
        corpus = _load_corpus(config)
        filtered = apply_length_filter(corpus, int(config.effective["max_words"]))
        known = [d for d in filtered if d.lobby_count is not None]
        report = subject_report(known, subject, config.scheme,
                                config.pipeline_spec(), config.k)
    else:
        model_path = model_path or config.effective.get("model_path")
        if not model_path:
            raise ConfigError("explain needs --model-file (or config model_path) "
                              "unless --subject is given")
        classifier = load_model(model_path)
        if classifier.kind != "logistic":
            raise ConfigError("explain requires a logistic model file")
        report = top_features(
            classifier.model,
            classifier.pipeline.vocabulary,
            config.k,
            model_id=classifier.pipeline.vocabulary_hash[:12],
        )
    scope_tag = report.scope.replace(" ", "_").replace("/", "_")
    report_csv = out / f"features_{scope_tag}.csv"
    write_feature_report_csv(report_csv, report)
    plot_paths = plot_feature_report(out, report)

    artifacts = {report_csv.name: report_csv}
    artifacts.update({p.name: p for p in plot_paths})
    artifacts["manifest.json"] = _write_manifest(config, "explain", artifacts)
    return artifacts


def cmd_score_unlabeled(config: ExperimentConfig) -> dict[str, Path]:
    """Rotation-score the unknown-count pool and aggregate the results."""
    from .plots import plot_quarter_trend

    corpus = _load_corpus(config)
    filtered = apply_length_filter(corpus, int(config.effective["max_words"]))
    rotation = config.rotation_config()

    known = [d for d in filtered if d.lobby_count is not None]
    positives = [
        d for d in known
        if rotation.positive_scheme.label(d.lobby_count) == 1
    ]
    if not positives:
        raise ConfigError(
            f"no positive bills under scheme {rotation.positive_scheme.scheme_id}"
        )
    pool = filter_pool(filtered, rotation.min_year, rotation.min_words)
    if len(pool.bills) < rotation.num_batches:
        raise ConfigError(
            f"unlabeled pool has {len(pool.bills)} bills after filters; "
            f"need at least {rotation.num_batches}"
        )

    result = rotation_score(positives, pool.bills, rotation, config.pipeline_spec())
    by_id = {d.id: d for d in pool.bills}
    section = config.effective["rotation"]
    trend = quarter_trend(result.scores, by_id,
                          thresholds=tuple(section["trend_thresholds"]))
    subjects = subject_table(result.scores, by_id,
                             thresholds=tuple(section["subject_thresholds"]))
    top = top_k_report(result.scores, by_id, k=config.k)

    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    scores_csv = out / "scores.csv"
    write_scores_csv(scores_csv, result)
    quarter_csv = out / "quarter_trend.csv"
    write_quarter_csv(quarter_csv, trend)
    subject_csv = out / "subject_table.csv"
    write_subject_csv(subject_csv, subjects)
    top_csv = out / "top_bills.csv"
    write_top_bills_csv(top_csv, top)
    trend_png = out / "quarter_trend.png"
    plot_quarter_trend(trend_png, trend)

    artifacts = {
        "scores.csv": scores_csv,
        "quarter_trend.csv": quarter_csv,
        "subject_table.csv": subject_csv,
        "top_bills.csv": top_csv,
        "quarter_trend.png": trend_png,
    }
    artifacts["manifest.json"] = _write_manifest(config, "score-unlabeled", artifacts)
    return artifacts


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lobbylens",
        description="Classify lobbied bills and score undisclosed ones.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("ingest", "corpus summaries: type/subject tables, intensity histogram"),
        ("train-eval", "tune, select threshold, evaluate on the test split"),
        ("explain", "top positive/negative n-grams of a logistic model"),
        ("score-unlabeled", "rotation-score bills without disclosure records"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", required=True, help="path to the JSON config")
        cmd.add_argument("--scheme", choices=sorted(SCHEMES), default=None)
        cmd.add_argument("--model", choices=["logistic", "forest"], default=None)
        cmd.add_argument("--features", choices=["bow", "tfidf"], default=None)
        cmd.add_argument("--seed", type=int, default=None)
        cmd.add_argument("--k", type=int, default=None)
        cmd.add_argument("--subject", default=None)
        cmd.add_argument("--out", default=None)
        if name == "explain":
            cmd.add_argument("--model-file", default=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {
        "scheme": args.scheme,
        "model_kind": args.model,
        "feature_kind": args.features,
        "seed": args.seed,
        "k": args.k,
        "subject": args.subject,
        "out_dir": args.out,
    }
    try:
        config = load_config(args.config, overrides)
        if args.command == "ingest":
            artifacts = cmd_ingest(config)
        elif args.command == "train-eval":
            artifacts = cmd_train_eval(config)
        elif args.command == "explain":
            artifacts = cmd_explain(config, model_path=args.model_file,
                                    subject=args.subject)
        else:
            artifacts = cmd_score_unlabeled(config)
    except (LobbyLensError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    for name in sorted(artifacts):
        print(f"wrote {artifacts[name]}")
    return 0


def run() -> None:
    sys.exit(main())
