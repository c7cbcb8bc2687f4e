"""Train both classifier families on one synthetic dataset and compare.

Runs a small grid search per family (selection by validation AUC), picks
the accuracy-maximizing threshold on validation, and touches the test split
exactly once per experiment.
"""

import numpy as np

from lobbylens import (
    D2,
    PipelineSpec,
    ScoredSet,
    accuracy,
    best_threshold,
    build_labeled_dataset,
    grid_search,
    roc_auc,
    split_dataset,
)
from lobbylens.pipeline import score_token_docs
from lobbylens.synth import make_intensity_corpus
from lobbylens.textprep import CleaningConfig

GRIDS = {
    "logistic": {"C": [0.1, 1.0, 10.0], "penalty": ["l2"]},
    "forest": {"n_trees": [60], "max_depth": [10, 20]},
}


def main() -> None:
    corpus = make_intensity_corpus(n_docs=1200, seed=3)
    tokens = {d.id: d.raw_text.split() for d in corpus}
    labeled = build_labeled_dataset(corpus, D2)
    split = split_dataset(labeled, seed=3)
    labels = labeled.labels_by_id()

    def part(ids):
        return [tokens[i] for i in ids], [labels[i] for i in ids]

    train_docs, train_labels = part(split.train_ids)
    val_docs, val_labels = part(split.val_ids)
    test_docs, test_labels = part(split.test_ids)
    print(f"D2 dataset: {len(train_docs)} train / {len(val_docs)} val / "
          f"{len(test_docs)} test\n")

    for kind in ("logistic", "forest"):
        spec = PipelineSpec(
            cleaning=CleaningConfig(stopword_lists=(), lemmatize=False),
            ngram_range=(1, 1),
            max_features=6000,
            model_kind=kind,
            model_params={"tol": 1e-4} if kind == "logistic" else {},
            seed=3,
        )
        result = grid_search(GRIDS[kind], train_docs, train_labels,
                             val_docs, val_labels, spec, trained_on="D2")
        classifier = result.best_model
        val_scores = np.array(score_token_docs(classifier, val_docs))
        chosen = best_threshold(ScoredSet(val_scores, np.array(val_labels)))
        test_scores = np.array(score_token_docs(classifier, test_docs))
        test_set = ScoredSet(test_scores, np.array(test_labels))
        print(f"{kind}:")
        print(f"  best params {result.best_params} (val AUC {result.best_val_auc:.4f})")
        print(f"  threshold {chosen.threshold:.4f} "
              f"(val accuracy {chosen.accuracy_at_threshold:.4f})")
        print(f"  test AUC {roc_auc(test_set):.4f}, "
              f"test accuracy {accuracy(test_set, chosen.threshold):.4f}\n")


if __name__ == "__main__":
    main()
