"""scikit-learn estimator wrapping the word-set training pipeline.

Raw texts in, labels out, with the usual fit/predict/score surface so
the classifier drops into pipelines, cross-validation, and grid search.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from .classifier import ClassificationResult, classify
from .corpus import Document, LabeledCorpus
from .mining import MiningConfig
from .pipeline import keywords_for_text, train_table
from .preprocess import load_stopwords, normalize_stopwords


class WordSetClassifier(ClassifierMixin, BaseEstimator):
    """Classify texts by mined frequent word sets.

    Training mines each class's frequent word sets, attributes every set
    to the class where it occurs most, and smooths per-class occurrence
    counts into a probability table. Prediction extracts a text's
    keywords and scores each class by how many of its own sets the text
    matches, how many foreign sets it avoids, and the class prior.

    Parameters
    ----------
    min_support : int | float, default=2
        Mining threshold; an int is an absolute transaction count, a
        float in (0, 1] a fraction of each class's transactions.
    min_confidence : float, default=0.75
        Carried into the mining config; inert in this pipeline.
    max_itemset_size : int | None, default=None
        Optional cap on mined set size.
    min_doc_freq : int, default=2
        A word must occur this often within a document to become one of
        its keywords.
    smoothing : {"owner-row", "per-class"}, default="owner-row"
        Denominator rule for the probability table.
    stopwords : None | str | Path | iterable of str, default=None
        None for the packaged list, a path to load, or the words
        themselves.

    Attributes
    ----------
    classes_ : ndarray
        Sorted unique labels seen in fit.
    table_ : ProbabilityTable
        The trained model.
    """

    def __init__(
        self,
        min_support: int | float = 2,
        min_confidence: float = 0.75,
        max_itemset_size: int | None = None,
        min_doc_freq: int = 2,
        smoothing: str = "owner-row",
        stopwords: None | str | Path | Iterable[str] = None,
    ) -> None:
        self.min_support = min_support
        self.min_confidence = min_confidence
        self.max_itemset_size = max_itemset_size
        self.min_doc_freq = min_doc_freq
        self.smoothing = smoothing
        self.stopwords = stopwords

    def _check_texts(self, X: object) -> list[str]:
        if isinstance(X, str):
            raise ValueError("X must be a sequence of texts, not a single string")
        texts = list(np.asarray(X, dtype=object).ravel()) if hasattr(X, "shape") else list(X)
        for i, t in enumerate(texts):
            if not isinstance(t, str):
                raise ValueError(f"X[{i}] is {type(t).__name__}, expected str")
        return texts

    def _resolved_stopwords(self) -> frozenset[str]:
        if self.stopwords is None:
            return load_stopwords()
        if isinstance(self.stopwords, (str, Path)):
            return load_stopwords(self.stopwords)
        return normalize_stopwords(self.stopwords)

    def fit(self, X: Sequence[str], y: Sequence) -> "WordSetClassifier":
        """Mine word sets from X grouped by y and build the table."""
        texts = self._check_texts(X)
        labels = list(np.asarray(y, dtype=object).ravel()) if hasattr(y, "shape") else list(y)
        if len(texts) != len(labels):
            raise ValueError(f"X has {len(texts)} texts but y has {len(labels)} labels")
        if not texts:
            raise ValueError("cannot fit on an empty dataset")

        classes = sorted(set(labels), key=str)
        keys = [str(c) for c in classes]
        if len(set(keys)) != len(keys):
            raise ValueError("labels collide when rendered as strings")
        self._label_of_key = dict(zip(keys, classes))

        corpus = LabeledCorpus(
            documents=tuple(
                Document(id=f"doc{i:05d}", text=t) for i, t in enumerate(texts)
            ),
            labels=tuple(str(label) for label in labels),
            classes=tuple(keys),
        )
        self.stopwords_ = self._resolved_stopwords()
        self.table_ = train_table(
            corpus,
            stopwords=self.stopwords_,
            config=MiningConfig(
                min_support=self.min_support,
                min_confidence=self.min_confidence,
                max_itemset_size=self.max_itemset_size,
            ),
            min_doc_freq=self.min_doc_freq,
            mode=self.smoothing,
        )
        self.classes_ = np.asarray(classes, dtype=object)
        return self

    def _results(self, X: Sequence[str]) -> list[ClassificationResult]:
        check_is_fitted(self, "table_")
        texts = self._check_texts(X)
        return [
            classify(
                self.table_,
                keywords_for_text(t, self.stopwords_, self.min_doc_freq),
            )
            for t in texts
        ]

    def predict(self, X: Sequence[str]) -> np.ndarray:
        """Predict the winning class for each text."""
        return np.asarray(
            [self._label_of_key[r.winner] for r in self._results(X)], dtype=object
        )

    def decision_function(self, X: Sequence[str]) -> np.ndarray:
        """Per-class totals, one column per entry of classes_."""
        results = self._results(X)
        return np.asarray(
            [
                [float(r.breakdown(str(c)).total) for c in self.classes_]
                for r in results
            ]
        )

    def explain(self, X: Sequence[str]) -> list[ClassificationResult]:
        """Full per-text results: breakdowns, matched sets, tie flags."""
        return self._results(X)
