"""Held-out accuracy measurement and the training-fraction curve."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classifier import classify, format_decimal
from .corpus import Document, LabeledCorpus, SplitSpec, split_corpus
from .errors import CorpusError
from .mining import MiningConfig
from .model import ProbabilityTable
from .pipeline import build_transactions, train_table


@dataclass(frozen=True)
class EvalReport:
    """Accuracy, per-class accuracy, and the confusion matrix for one test set.

    ``classes`` fixes row/column order: the table's classes first, then
    any extra labels seen only in the test set. ``confusion[i][j]``
    counts documents of true class i predicted as class j. ``test_ids``
    and ``leaked_ids`` (test ids that also appeared in the recorded
    training ids) make leakage visible instead of silent.
    """

    classes: tuple[str, ...]
    confusion: tuple[tuple[int, ...], ...]
    accuracy: Fraction
    per_class_accuracy: dict[str, Fraction]
    n_test: int
    test_ids: tuple[str, ...]
    leaked_ids: tuple[str, ...]


def evaluate(
    table: ProbabilityTable,
    test: LabeledCorpus,
    *,
    stopwords: frozenset[str] | None = None,
    min_doc_freq: int = 2,
    train_ids: Sequence[str] | None = None,
) -> EvalReport:
    """Classify every test document and tally exact counts.

    Keeping the model clean of test data is the caller's job; passing
    the training document ids lets the report flag any overlap.
    """
    if len(test) == 0:
        raise CorpusError("empty test set")
    classes = list(table.classes)
    for label in test.classes:
        if label not in classes:
            classes.append(label)
    index = {c: i for i, c in enumerate(classes)}

    matrix = [[0] * len(classes) for _ in classes]
    transactions = build_transactions(test, stopwords, min_doc_freq)
    for t, label in zip(transactions, test.labels):
        predicted = classify(table, t.items).winner
        matrix[index[label]][index[predicted]] += 1

    correct = sum(matrix[i][i] for i in range(len(classes)))
    per_class: dict[str, Fraction] = {}
    for c in classes:
        row = matrix[index[c]]
        n_c = sum(row)
        if n_c:
            per_class[c] = Fraction(row[index[c]], n_c)

    known_train = set(train_ids) if train_ids is not None else set()
    test_ids = tuple(doc.id for doc in test.documents)
    leaked = tuple(i for i in test_ids if i in known_train)
    return EvalReport(
        classes=tuple(classes),
        confusion=tuple(tuple(row) for row in matrix),
        accuracy=Fraction(correct, len(test)),
        per_class_accuracy=per_class,
        n_test=len(test),
        test_ids=test_ids,
        leaked_ids=leaked,
    )


@dataclass(frozen=True)
class CurvePoint:
    """Accuracy of one (training fraction, seed) run."""

    fraction: Fraction
    seed: int
    accuracy: Fraction


@dataclass(frozen=True)
class LearningCurve:
    """All (fraction, seed) points of one curve experiment."""

    points: tuple[CurvePoint, ...]

    def summary(self) -> list[tuple[Fraction, Fraction, Fraction, Fraction]]:
        """Per fraction: (fraction, mean, min, max) over its seeds."""
        by_fraction: dict[Fraction, list[Fraction]] = {}
        order: list[Fraction] = []
        for p in self.points:
            if p.fraction not in by_fraction:
                by_fraction[p.fraction] = []
                order.append(p.fraction)
            by_fraction[p.fraction].append(p.accuracy)
        out = []
        for f in order:
            accs = by_fraction[f]
            out.append((f, sum(accs) / len(accs), min(accs), max(accs)))
        return out


def learning_curve(
    corpus: LabeledCorpus,
    fractions: Sequence[float | str | Fraction],
    seeds: Sequence[int],
    *,
    stopwords: frozenset[str] | None = None,
    config: MiningConfig | None = None,
    min_doc_freq: int = 2,
    mode: str = "owner-row",
) -> LearningCurve:
    """Train and evaluate once per (fraction, seed) pair.

    Each run splits the corpus fresh, trains on the training side only,
    and measures accuracy on the held-out side. Single splits are noisy
    by nature, so run several seeds per fraction and read the summary.
    """
    specs = [SplitSpec(f, seed=0) for f in fractions]
    values = [s.train_fraction for s in specs]
    if not values:
        raise ValueError("no fractions given")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError("fractions must be strictly increasing")
    if not seeds:
        raise ValueError("no seeds given")

    points = []
    for value in values:
        for seed in seeds:
            train, test = split_corpus(corpus, SplitSpec(value, seed=seed))
            table = train_table(
                train,
                stopwords=stopwords,
                config=config,
                min_doc_freq=min_doc_freq,
                mode=mode,
            )
            report = evaluate(
                table,
                test,
                stopwords=stopwords,
                min_doc_freq=min_doc_freq,
                train_ids=[d.id for d in train.documents],
            )
            points.append(CurvePoint(fraction=value, seed=seed, accuracy=report.accuracy))
    return LearningCurve(points=tuple(points))


def make_synthetic_corpus(
    n_classes: int = 5,
    docs_per_class: int = 20,
    patterns_per_class: int = 8,
    patterns_per_doc: int = 3,
    filler_per_doc: int = 4,
    seed: int = 0,
) -> LabeledCorpus:
    """Generate a corpus with disjoint per-class vocabularies.

    Each class plants its own word pairs; every document repeats each
    chosen pair twice (so the pair survives the in-document frequency
    rule) plus one-off filler words that can never become frequent. By
    construction a pair occurs only in its own class, so a sound
    pipeline separates the classes almost perfectly.
    """
    if patterns_per_doc > patterns_per_class:
        raise ValueError("patterns_per_doc cannot exceed patterns_per_class")
    rng = random.Random(seed)
    docs: list[Document] = []
    labels: list[str] = []
    classes = tuple(f"c{i}" for i in range(n_classes))
    for ci, cls in enumerate(classes):
        pairs = [
            (f"c{ci}p{pi}a", f"c{ci}p{pi}b") for pi in range(patterns_per_class)
        ]
        for di in range(docs_per_class):
            chosen = rng.sample(pairs, patterns_per_doc)
            tokens: list[str] = []
            for a, b in chosen:
                tokens += [a, a, b, b]
            tokens += [f"filler{ci}x{di}x{j}" for j in range(filler_per_doc)]
            rng.shuffle(tokens)
            docs.append(Document(id=f"{cls}/d{di:02d}", text=" ".join(tokens)))
            labels.append(cls)
    return LabeledCorpus(tuple(docs), tuple(labels), classes)


def format_report_csv(report: EvalReport) -> str:
    """Report as blocks of delimited text: headline numbers, per-class
    accuracy, then the confusion matrix (rows true, columns predicted)."""
    lines = [
        f"accuracy,{format_decimal(report.accuracy, 6)}",
        f"n_test,{report.n_test}",
        "",
        "class,accuracy",
    ]
    for c in report.classes:
        if c in report.per_class_accuracy:
            lines.append(f"{c},{format_decimal(report.per_class_accuracy[c], 6)}")
    lines.append("")
    lines.append("confusion," + ",".join(report.classes))
    for c, row in zip(report.classes, report.confusion):
        lines.append(c + "," + ",".join(str(v) for v in row))
    if report.leaked_ids:
        lines.append("")
        lines.append("leaked_ids," + ";".join(report.leaked_ids))
    return "\n".join(lines) + "\n"


def format_report_json(report: EvalReport) -> str:
    payload = {
        "accuracy": format_decimal(report.accuracy, 6),
        "n_test": report.n_test,
        "classes": list(report.classes),
        "per_class_accuracy": {
            c: format_decimal(a, 6) for c, a in report.per_class_accuracy.items()
        },
        "confusion": [list(row) for row in report.confusion],
        "test_ids": list(report.test_ids),
        "leaked_ids": list(report.leaked_ids),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def format_curve_csv(curve: LearningCurve) -> str:
    """Curve as two blocks: every point, then the per-fraction summary."""
    lines = ["fraction,seed,accuracy"]
    for p in curve.points:
        lines.append(
            f"{format_decimal(p.fraction, 2)},{p.seed},{format_decimal(p.accuracy, 6)}"
        )
    lines.append("")
    lines.append("fraction,mean,min,max")
    for f, mean, lo, hi in curve.summary():
        lines.append(
            ",".join(
                (
                    format_decimal(f, 2),
                    format_decimal(mean, 6),
                    format_decimal(lo, 6),
                    format_decimal(hi, 6),
                )
            )
        )
    return "\n".join(lines) + "\n"


def format_curve_json(curve: LearningCurve) -> str:
    payload = {
        "points": [
            {
                "fraction": format_decimal(p.fraction, 2),
                "seed": p.seed,
                "accuracy": format_decimal(p.accuracy, 6),
            }
            for p in curve.points
        ],
        "summary": [
            {
                "fraction": format_decimal(f, 2),
                "mean": format_decimal(mean, 6),
                "min": format_decimal(lo, 6),
                "max": format_decimal(hi, 6),
            }
            for f, mean, lo, hi in curve.summary()
        ],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
