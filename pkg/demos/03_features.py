"""Bounded n-gram vocabularies and the BOW vs TF-IDF representations."""

from lobbylens import build_vocabulary, fit_tfidf, transform_bow, transform_tfidf

DOCS = [
    "appropriation energy smart meter".split(),
    "appropriation health care".split(),
    "appropriation energy grid".split(),
    "health care overdose prevention".split(),
]


def main() -> None:
    vocab = build_vocabulary(DOCS, ngram_range=(1, 2), max_features=20)
    print(f"vocabulary fitted on {len(DOCS)} documents, "
          f"kept {vocab.size} of the highest-df n-grams (cap 20):")
    terms = vocab.terms()
    for gram in terms:
        col = vocab.index[gram]
        print(f"  [{col:2d}] df={vocab.document_frequency[col]}  {gram!r}")

    doc = "energy smart meter energy".split()
    print(f"\ndocument: {doc}")
    bow = transform_bow(doc, vocab)
    print("BOW pairs (raw counts, out-of-vocabulary n-grams ignored):")
    for idx, value in bow.pairs():
        print(f"  {terms[int(idx)]!r}: {value:g}")

    tfidf = fit_tfidf(DOCS, vocab)
    print("\nIDF weights (ln((1+n)/(1+df)) + 1): common terms get ~1,")
    print("rare terms get boosted:")
    for gram in ("appropriation", "smart meter"):
        print(f"  {gram!r}: {tfidf.idf[vocab.index[gram]]:.4f}")

    vec = transform_tfidf(doc, tfidf)
    print(f"\nTF-IDF vector (Euclidean norm {vec.norm():.6f}):")
    for idx, value in vec.pairs():
        print(f"  {terms[int(idx)]!r}: {value:.4f}")


if __name__ == "__main__":
    main()
