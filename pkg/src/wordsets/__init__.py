"""Text classification by mined frequent word sets.

Train: extract each document's repeated keywords, mine each class's
maximal frequent word sets, attribute every set to the class where it
occurs most, and smooth the counts into a per-set/per-class probability
table with class priors. Classify: a class scores by the share of its
own sets the document matches, the share of foreign sets it does not
match, and its prior; highest total wins.

The scikit-learn estimator (WordSetClassifier) is imported lazily so
the core library works without scikit-learn installed.
"""

from __future__ import annotations

from .classifier import (
    ClassificationResult,
    ScoreBreakdown,
    classify,
    format_breakdowns,
    format_decimal,
    is_matched,
    match_fraction,
    score_class,
)
from .corpus import (
    Document,
    LabeledCorpus,
    SplitSpec,
    load_corpus,
    load_corpus_csv,
    load_corpus_dir,
    split_corpus,
)
from .errors import (
    CorpusError,
    MiningError,
    ModelChecksumError,
    ModelError,
    ModelFormatError,
    ModelVersionError,
    WordsetsError,
)
from .evaluation import (
    CurvePoint,
    EvalReport,
    LearningCurve,
    evaluate,
    format_curve_csv,
    format_curve_json,
    format_report_csv,
    format_report_json,
    learning_curve,
    make_synthetic_corpus,
)
from .mining import (
    ItemSet,
    MiningConfig,
    apriori,
    brute_force_frequent,
    maximal_itemsets,
    mine_per_class,
)
from .model import (
    ClassStats,
    ProbabilityTable,
    TableEntry,
    attribute_sets,
    build_table,
    load_table,
    save_table,
)
from .pipeline import (
    build_transactions,
    classify_text,
    group_by_class,
    keywords_for_text,
    train_table,
)
from .preprocess import (
    Transaction,
    extract_keywords,
    load_stopwords,
    singularize,
    tokenize,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationResult",
    "ClassStats",
    "CorpusError",
    "CurvePoint",
    "Document",
    "EvalReport",
    "ItemSet",
    "LabeledCorpus",
    "LearningCurve",
    "MiningConfig",
    "MiningError",
    "ModelChecksumError",
    "ModelError",
    "ModelFormatError",
    "ModelVersionError",
    "ProbabilityTable",
    "ScoreBreakdown",
    "SplitSpec",
    "TableEntry",
    "Transaction",
    "WordSetClassifier",
    "WordsetsError",
    "apriori",
    "attribute_sets",
    "brute_force_frequent",
    "build_table",
    "build_transactions",
    "classify",
    "classify_text",
    "evaluate",
    "extract_keywords",
    "format_breakdowns",
    "format_curve_csv",
    "format_curve_json",
    "format_decimal",
    "format_report_csv",
    "format_report_json",
    "group_by_class",
    "is_matched",
    "keywords_for_text",
    "learning_curve",
    "load_corpus",
    "load_corpus_csv",
    "load_corpus_dir",
    "load_stopwords",
    "load_table",
    "make_synthetic_corpus",
    "match_fraction",
    "maximal_itemsets",
    "mine_per_class",
    "save_table",
    "score_class",
    "singularize",
    "split_corpus",
    "tokenize",
    "train_table",
]


def __getattr__(name: str):
    if name == "WordSetClassifier":
        from .estimator import WordSetClassifier

        return WordSetClassifier
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
