"""Intensity-aware lobbying detection for legislative bill texts.

The package covers the full desk-scale workflow: ingest bills and
disclosure counts, label them under intensity thresholds, clean text
deterministically, build bounded n-gram BOW/TF-IDF features, train
regularized logistic and random-forest classifiers, evaluate with
accuracy and rank-based ROC AUC, rank influential n-grams, and score
undisclosed bills with the rotated pseudo-negative procedure.
"""

from .corpus import (
    BILL_TYPES,
    D1,
    D2,
    D3,
    INTENSITY_BIN_EDGES,
    SCHEMES,
    BillDocument,
    DatasetSplit,
    IntensityHistogram,
    LabeledDataset,
    LabelingScheme,
    apply_length_filter,
    build_labeled_dataset,
    ingest_corpus,
    intensity_histogram,
    merge_lobby_counts,
    split_dataset,
)
from .errors import ConfigError, DataFormatError, LobbyLensError, ModelFormatError
from .evaluation import (
    GridSearchResult,
    GridTrial,
    ScoredSet,
    ThresholdResult,
    accuracy,
    best_threshold,
    grid_search,
    roc_auc,
)
from .features import (
    DEFAULT_MAX_FEATURES,
    SparseVector,
    TfIdfModel,
    Vocabulary,
    build_vocabulary,
    fit_tfidf,
    transform_bow,
    transform_tfidf,
)
from .interpret import FeatureReport, subject_report, top_features
from .models import (
    DecisionTree,
    FittedPipeline,
    ForestModel,
    ForestParams,
    LogisticModel,
    TrainedClassifier,
    gini_impurity,
    load_model,
    logistic_objective,
    predict_proba,
    save_model,
    train_forest,
    train_logistic,
)
from .pipeline import PipelineSpec, fit_text_classifier, score_token_docs
from .textprep import (
    CleaningConfig,
    StopwordList,
    bundled_stopwords,
    clean,
    default_cleaning_config,
    lemmatize,
    load_stopword_file,
)
from .unlabeled import (
    PoolSelection,
    QuarterSeries,
    RotationConfig,
    RotationResult,
    SubjectProportions,
    UnlabeledScore,
    filter_pool,
    quarter_trend,
    rotation_score,
    subject_table,
    top_k_report,
)

__version__ = "0.1.0"
