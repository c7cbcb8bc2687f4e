"""Corpus basics: intensity histogram, the three labeling schemes, splits.

Builds a synthetic bill corpus whose lobbying counts follow the observed
disclosure-count distribution, then shows how the D1/D2/D3 thresholds carve
it into labeled datasets of shrinking size, and how the stratified
72/8/20 split behaves.
"""

from lobbylens import (
    D1,
    D2,
    D3,
    apply_length_filter,
    build_labeled_dataset,
    intensity_histogram,
    split_dataset,
)
from lobbylens.synth import make_intensity_corpus


def main() -> None:
    corpus = make_intensity_corpus(n_docs=2000, seed=7)
    print(f"synthetic corpus: {len(corpus)} bills")
    print(f"example bill: {corpus[1].id!r}, subject {corpus[1].subject!r}, "
          f"{corpus[1].word_count} words, lobby_count {corpus[1].lobby_count}")

    # The length filter is a no-op here (all bills are short), but it is the
    # same guard a real corpus needs against million-word appropriations texts.
    filtered = apply_length_filter(corpus, max_words=150_000)
    print(f"after 150k-word length filter: {len(filtered)} bills\n")

    print("lobbying-intensity histogram:")
    for label, count in intensity_histogram(filtered).bins:
        bar = "#" * (count // 20)
        print(f"  {label:>12}  {count:5d}  {bar}")

    print("\nlabeled dataset sizes per scheme (positives need count >= threshold;")
    print("counts strictly between 0 and the threshold are excluded entirely):")
    for scheme in (D1, D2, D3):
        labeled = build_labeled_dataset(filtered, scheme)
        print(f"  {scheme.scheme_id} (>= {scheme.positive_min:3d}): "
              f"{len(labeled.examples):5d} examples "
              f"({labeled.n_positive} positive / {labeled.n_negative} negative), "
              f"{len(labeled.excluded_ids)} excluded")

    labeled = build_labeled_dataset(filtered, D3)
    split = split_dataset(labeled, seed=0)
    labels = labeled.labels_by_id()
    print("\nstratified split of the D3 dataset (seed 0):")
    for name, part in (("train", split.train_ids), ("val", split.val_ids),
                       ("test", split.test_ids)):
        rate = sum(labels[i] for i in part) / len(part)
        print(f"  {name:>5}: {len(part):5d} bills, positive rate {rate:.3f}")


if __name__ == "__main__":
    main()
