"""Scoring bills that carry no disclosure record at all.

Intensively lobbied bills form the fixed positive sample.  The undisclosed
pool is cut into five batches; each batch in turn plays the pseudo-negative
class, and every pool bill collects four held-out probabilities.  Their
average is the bill's lobbying-evidence score.  The pool generator hides a
true intensity per bill, so we can check the scores track the hidden truth.
"""

from pathlib import Path

import numpy as np

from lobbylens import (
    D3,
    PipelineSpec,
    RotationConfig,
    build_labeled_dataset,
    filter_pool,
    quarter_trend,
    rotation_score,
    subject_table,
    top_k_report,
)
from lobbylens.synth import make_intensity_corpus, make_unlabeled_pool
from lobbylens.textprep import CleaningConfig
from lobbylens.unlabeled import write_scores_csv

OUT_DIR = Path(__file__).parent / "output"


def main() -> None:
    labeled_corpus = make_intensity_corpus(n_docs=1200, seed=1)
    labeled = build_labeled_dataset(labeled_corpus, D3)
    by_id = {d.id: d for d in labeled_corpus}
    positives = [by_id[i] for i, label in labeled.examples if label == 1]
    print(f"positive sample: {len(positives)} bills with lobby_count >= 50")

    pool_docs, hidden = make_unlabeled_pool(n_docs=300, seed=2,
                                            lobbied_like_fraction=0.35)
    selection = filter_pool(pool_docs, min_year=1990, min_words=100)
    print(f"pool after filters: {len(selection.bills)} undisclosed bills "
          f"({selection.n_missing_date} dropped for missing dates)")

    spec = PipelineSpec(
        cleaning=CleaningConfig(stopword_lists=(), lemmatize=False),
        ngram_range=(1, 1),
        max_features=10_000,
        model_params={"C": 1.0, "tol": 1e-4},
    )
    config = RotationConfig(num_batches=5, seed=11, min_year=1990, min_words=100)
    result = rotation_score(positives, selection.bills, config, spec)
    print(f"every pool bill holds {len(result.scores[0].iteration_scores)} "
          f"held-out predictions\n")

    hidden_by_id = {doc.id: int(c) for doc, c in zip(pool_docs, hidden)}
    means = {s.bill_id: s.mean_score for s in result.scores}
    lobbied_like = [means[d.id] for d in selection.bills if hidden_by_id[d.id] > 0]
    quiet = [means[d.id] for d in selection.bills if hidden_by_id[d.id] == 0]
    print("mean rotation score by hidden ground truth:")
    print(f"  secretly lobbied-like bills: {np.mean(lobbied_like):.3f}")
    print(f"  genuinely quiet bills:       {np.mean(quiet):.3f}")

    trend = quarter_trend(result.scores, {d.id: d for d in selection.bills})
    busiest = max(trend.entries, key=lambda e: e.n_bills)
    print(f"\nquarter series covers {len(trend.entries)} quarters; busiest is "
          f"{busiest.year}Q{busiest.quarter} with {busiest.n_bills} bills "
          f"(share > 0.5: {busiest.share_above[0.5]:.2f})")

    table = subject_table(result.scores, {d.id: d for d in selection.bills})
    print("\nshare of pool bills with lobbying evidence, by subject:")
    print(f"  {'subject':24s} {'>0.5':>6} {'>0.75':>6} {'>0.9':>6} {'n':>5}")
    for row in table.rows:
        print(f"  {row.subject:24s} {row.share_above[0.5]:6.3f} "
              f"{row.share_above[0.75]:6.3f} {row.share_above[0.9]:6.3f} "
              f"{row.n_bills:5d}")

    top = top_k_report(result.scores, {d.id: d for d in selection.bills}, k=5)
    print("\ntop 5 most suspicious undisclosed bills:")
    for bill in top:
        truth = hidden_by_id[bill.bill_name]
        print(f"  {bill.bill_name:12s} score {bill.mean_score:.4f} "
              f"subject {bill.subject!r} (hidden count {truth})")

    OUT_DIR.mkdir(exist_ok=True)
    out = OUT_DIR / "rotation_scores.csv"
    write_scores_csv(out, result)
    print(f"\nwrote {out}")


if __name__ == "__main__":
    main()
