"""The four CLI commands end to end, on generated files.

Writes a bills JSONL, a lobby-count CSV, and a config JSON under
demos/output/cli/, then drives ingest -> train-eval -> explain ->
score-unlabeled exactly as a shell user would.
"""

import json
from pathlib import Path

from lobbylens.cli import main as lobbylens_main
from lobbylens.synth import make_intensity_corpus, make_unlabeled_pool

BASE = Path(__file__).parent / "output" / "cli"


def write_inputs() -> tuple[Path, Path]:
    BASE.mkdir(parents=True, exist_ok=True)
    labeled = make_intensity_corpus(n_docs=600, seed=21)
    pool, _ = make_unlabeled_pool(n_docs=60, seed=22)
    bills_path = BASE / "bills.jsonl"
    counts_path = BASE / "counts.csv"
    with bills_path.open("w", encoding="utf-8") as fh:
        for doc in labeled + pool:
            record = {
                "id": doc.id,
                "text": doc.raw_text,
                "bill_type": doc.bill_type,
                "congress": doc.congress,
                "title": doc.title,
                "subject": doc.subject,
                "introduced_date": doc.introduced_date.isoformat(),
            }
            fh.write(json.dumps(record) + "\n")
    with counts_path.open("w", encoding="utf-8") as fh:
        fh.write("bill_id,count\n")
        for doc in labeled:
            fh.write(f"{doc.id},{doc.lobby_count}\n")
    return bills_path, counts_path


def write_config(bills_path: Path, counts_path: Path) -> Path:
    config = {
        "bills_path": str(bills_path),
        "counts_path": str(counts_path),
        "out_dir": str(BASE / "run"),
        "seed": 33,
        "scheme": "D2",
        "cleaning": {"stopwords": [], "lemmatize": False},
        "features": {"kind": "tfidf", "ngram_range": [1, 1], "max_features": 8000},
        "model": {
            "kind": "logistic",
            "params": {"tol": 1e-4},
            "grid": {"C": [0.5, 2.0]},
        },
        "k": 10,
        "rotation": {"num_batches": 5, "min_year": 1990, "min_words": 100},
    }
    config_path = BASE / "config.json"
    config_path.write_text(json.dumps(config, indent=2), encoding="utf-8")
    return config_path


def run(argv: list[str]) -> None:
    print(f"\n$ lobbylens {' '.join(argv)}")
    code = lobbylens_main(argv)
    print(f"(exit code {code})")
    if code != 0:
        raise SystemExit(code)


def main() -> None:
    bills_path, counts_path = write_inputs()
    config_path = write_config(bills_path, counts_path)
    config = ["--config", str(config_path)]

    run(["ingest", *config, "--out", str(BASE / "run_ingest")])
    run(["train-eval", *config, "--out", str(BASE / "run_train")])
    run(["explain", *config,
         "--model-file", str(BASE / "run_train" / "model.json"),
         "--out", str(BASE / "run_explain")])
    run(["score-unlabeled", *config, "--out", str(BASE / "run_scores")])

    report = (BASE / "run_train" / "report.csv").read_text().splitlines()
    print("\ntrain-eval report:")
    for line in report:
        print(f"  {line}")
    manifest = json.loads((BASE / "run_scores" / "manifest.json").read_text())
    print(f"\nscore-unlabeled manifest: seed {manifest['seed']}, "
          f"config hash {manifest['config_sha256'][:16]}..., "
          f"{len(manifest['artifacts'])} artifacts checksummed")


if __name__ == "__main__":
    main()
