"""Which n-grams drive the classifier, globally and per subject.

Plants a distinct marker token inside each subject's lobbied bills
("smart" for Energy, "overdose" for Health) and shows that the per-subject
logistic models recover exactly those markers as top positive features.
"""

from pathlib import Path

from lobbylens import (
    D2,
    PipelineSpec,
    build_labeled_dataset,
    fit_text_classifier,
    subject_report,
    top_features,
)
from lobbylens.interpret import write_feature_report_csv
from lobbylens.synth import make_intensity_corpus
from lobbylens.textprep import CleaningConfig

OUT_DIR = Path(__file__).parent / "output"


def main() -> None:
    spec = PipelineSpec(
        cleaning=CleaningConfig(stopword_lists=(), lemmatize=False),
        ngram_range=(1, 1),
        max_features=8000,
        model_params={"C": 1.0, "tol": 1e-4},
    )
    corpus = make_intensity_corpus(
        n_docs=1800, seed=5,
        subject_signal={"Energy": "smart", "Health": "overdose"},
    )
    labeled = build_labeled_dataset(corpus, D2)
    tokens = {d.id: d.raw_text.split() for d in corpus}
    labels = labeled.labels_by_id()
    ids = [i for i, _ in labeled.examples]
    classifier = fit_text_classifier([tokens[i] for i in ids],
                                     [labels[i] for i in ids],
                                     spec, trained_on="D2")

    report = top_features(classifier.model, classifier.pipeline.vocabulary, k=8)
    print("global top positive features (coefficient):")
    for gram, coef in report.positive:
        print(f"  {gram:12s} {coef:+.4f}")
    print("global top negative features:")
    for gram, coef in report.negative[:4]:
        print(f"  {gram:12s} {coef:+.4f}")

    OUT_DIR.mkdir(exist_ok=True)
    for subject in ("Energy", "Health"):
        sub = subject_report(corpus, subject, D2, spec, k=8)
        top = [gram for gram, _ in sub.positive]
        print(f"\n{subject}: top positive features {top[:5]}")
        marker = "smart" if subject == "Energy" else "overdose"
        print(f"  planted marker {marker!r} recovered: {marker in top}")
        out = OUT_DIR / f"features_{subject}.csv"
        write_feature_report_csv(out, sub)
        print(f"  wrote {out}")


if __name__ == "__main__":
    main()
