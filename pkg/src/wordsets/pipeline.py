"""End-to-end glue: corpus in, trained table out, text in, label out."""

from __future__ import annotations

from .classifier import ClassificationResult, classify
from .corpus import Document, LabeledCorpus
from .mining import MiningConfig, mine_per_class
from .model import ProbabilityTable, attribute_sets, build_table
from .preprocess import Transaction, extract_keywords, load_stopwords


def build_transactions(
    corpus: LabeledCorpus,
    stopwords: frozenset[str] | None = None,
    min_doc_freq: int = 2,
) -> list[Transaction]:
    """Preprocess every document into its keyword transaction, in corpus order."""
    if stopwords is None:
        stopwords = load_stopwords()
    return [extract_keywords(doc, stopwords, min_doc_freq) for doc in corpus.documents]


def group_by_class(
    corpus: LabeledCorpus, transactions: list[Transaction]
) -> dict[str, list[Transaction]]:
    """Bucket parallel transactions by their document's label, in class order."""
    grouped: dict[str, list[Transaction]] = {c: [] for c in corpus.classes}
    for label, t in zip(corpus.labels, transactions):
        grouped[label].append(t)
    return grouped


def train_table(
    corpus: LabeledCorpus,
    *,
    stopwords: frozenset[str] | None = None,
    config: MiningConfig | None = None,
    min_doc_freq: int = 2,
    mode: str = "owner-row",
) -> ProbabilityTable:
    """Full training pass: preprocess, mine per class, attribute, smooth."""
    if config is None:
        config = MiningConfig()
    transactions = build_transactions(corpus, stopwords, min_doc_freq)
    grouped = group_by_class(corpus, transactions)
    itemsets = mine_per_class(grouped, config)
    _, stats = attribute_sets(itemsets, corpus.classes)
    return build_table(itemsets, stats, mode=mode)


def keywords_for_text(
    text: str,
    stopwords: frozenset[str] | None = None,
    min_doc_freq: int = 2,
) -> frozenset[str]:
    """Keyword set for one free-standing text, same rules as training."""
    if stopwords is None:
        stopwords = load_stopwords()
    return extract_keywords(Document(id="input", text=text), stopwords, min_doc_freq).items


def classify_text(
    table: ProbabilityTable,
    text: str,
    *,
    stopwords: frozenset[str] | None = None,
    min_doc_freq: int = 2,
) -> ClassificationResult:
    """Classify one raw text against a trained table."""
    return classify(table, keywords_for_text(text, stopwords, min_doc_freq))
