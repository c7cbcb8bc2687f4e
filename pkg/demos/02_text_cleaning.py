"""The fixed cleaning pipeline, step by step, on a bill-like snippet."""

from lobbylens import CleaningConfig, bundled_stopwords, clean, lemmatize

SNIPPET = (
    "SECTION 3. APPROPRIATIONS; Studies required. "
    "The Secretary shall allocate $1,500,000 for smart-meter studies "
    "under subsection (b) of the Energy Act of 2018."
)


def main() -> None:
    print("input:")
    print(f"  {SNIPPET}\n")

    bare = CleaningConfig(strip_numbers=False, strip_punctuation=False,
                          stopword_lists=(), lemmatize=False)
    print("lowercase whitespace tokenization only:")
    print(f"  {clean(SNIPPET, bare)}\n")

    no_stop = CleaningConfig(stopword_lists=(), lemmatize=False)
    print("plus punctuation/special-character stripping and number removal:")
    print(f"  {clean(SNIPPET, no_stop)}\n")

    full = CleaningConfig(stopword_lists=(bundled_stopwords("english"),
                                          bundled_stopwords("law")))
    print("full pipeline (english + law stopwords, lemmatization, re-drop):")
    print(f"  {clean(SNIPPET, full)}\n")

    print("the rule lemmatizer on a few forms:")
    for token in ("appropriations", "studies", "required", "allocating",
                  "smart", "studies", "children"):
        print(f"  {token:15s} -> {lemmatize(token)}")

    tokens = clean(SNIPPET, full)
    again = clean(" ".join(tokens), full)
    print(f"\ncleaning its own output changes nothing: {tokens == again}")


if __name__ == "__main__":
    main()
