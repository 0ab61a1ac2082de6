"""Turn raw document text into a normalized keyword set.

The pipeline is deliberately crude: lowercase, split on anything that is
not a letter or digit, strip plurals with suffix rules, drop stopwords,
and keep only words that repeat within the document. No lemmatizer, no
n-grams, no weighting.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .corpus import Document

_WORD_BREAK = re.compile(r"[^a-z0-9]+")

KEYWORD_PATTERN = re.compile(r"[a-z][a-z0-9-]*$")


@dataclass(frozen=True)
class Transaction:
    """The deduplicated keyword set of one document."""

    doc_id: str
    items: frozenset[str]


def tokenize(text: str) -> list[str]:
    """Split text into lowercase word tokens.

    Any run of non-alphanumeric characters acts as a separator, so
    hyphenated and symbol-joined words come apart. Tokens that do not
    start with a letter (pure numbers, ordinals like "4th") are dropped
    because they can never become keywords.
    """
    tokens = _WORD_BREAK.sub(" ", text.lower()).split()
    return [t for t in tokens if not t[0].isdigit()]


def singularize(token: str) -> str:
    """Collapse plural suffixes with ordered rewrite rules.

    Intentionally naive suffix stripping ("parentheses" -> "parenthese"),
    applied uniformly so singular and plural forms of a word collide.
    Idempotent: applying it twice equals applying it once.
    """
    if token.endswith("ies"):
        return token[:-3] + "y"
    if token.endswith("sses"):
        return token[:-2]
    if token.endswith(("xes", "ches", "shes")):
        return token[:-2]
    # bare -s, but never break a double-s word like "class"
    if token.endswith("s") and not token.endswith("ss") and len(token) > 3:
        return token[:-1]
    return token


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Load a stopword set, defaulting to the packaged list.

    The file holds one word per line; '#' starts a comment. Entries are
    singularized on load so membership tests agree with normalized
    document tokens.
    """
    if path is None:
        text = (resources.files("wordsets") / "data/stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    words = set()
    for line in text.splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(singularize(word))
    return frozenset(words)


def normalize_stopwords(words: Iterable[str]) -> frozenset[str]:
    """Normalize an in-memory stopword collection the same way the loader does."""
    return frozenset(singularize(w.strip().lower()) for w in words if w.strip())


def extract_keywords(
    doc: Document,
    stopwords: frozenset[str],
    min_doc_freq: int = 2,
) -> Transaction:
    """Build the keyword transaction for one document.

    Tokens are normalized, stopwords removed, and only normalized words
    occurring at least ``min_doc_freq`` times in this document survive.
    An empty result is legal; callers decide whether to care.
    """
    if min_doc_freq < 1:
        raise ValueError(f"min_doc_freq must be >= 1, got {min_doc_freq}")
    counts = Counter(
        word
        for word in map(singularize, tokenize(doc.text))
        if word not in stopwords
    )
    kept = frozenset(w for w, c in counts.items() if c >= min_doc_freq)
    return Transaction(doc_id=doc.id, items=kept)
