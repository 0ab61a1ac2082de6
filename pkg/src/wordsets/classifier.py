"""Score classes for a keyword set against a trained probability table.

For each class, the table's rows split into sets the class owns (its
probability is highest there) and sets it does not. Owned rows that the
document matches count for the class; non-owned rows the document fails
to match also count for it. Both tallies become percentages, the class
prior is added, and the highest total wins.

A row is "matched" when at least half of its words appear in the
document's keyword set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Iterable, Sequence

from .model import ProbabilityTable

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ScoreBreakdown:
    """One class's tallies and score for one document.

    owned_sets / other_sets partition the table rows by whether this
    class holds the row's highest probability. matched_owned counts
    owned rows the document matched; unmatched_other counts non-owned
    rows it did not match. Degenerate denominators score zero: a class
    owning no sets earns no positive share, a class owning every set
    earns no negative share.
    """

    class_name: str
    owned_sets: int
    other_sets: int
    matched_owned: int
    unmatched_other: int
    prior: Fraction

    @property
    def positive_pct(self) -> Fraction:
        if self.owned_sets == 0:
            return Fraction(0)
        return Fraction(self.matched_owned * 100, self.owned_sets)

    @property
    def negative_pct(self) -> Fraction:
        if self.other_sets == 0:
            return Fraction(0)
        return Fraction(self.unmatched_other * 100, self.other_sets)

    @property
    def total(self) -> Fraction:
        return self.positive_pct + self.negative_pct + self.prior


@dataclass(frozen=True)
class ClassificationResult:
    """Winner plus the full per-class evidence for one document.

    tied_classes lists every class sharing the winning total (length 1
    when the win is unique; the winner is the earliest of them).
    low_evidence flags an empty keyword set: the scores then reflect
    only non-matches and priors.
    """

    winner: str
    breakdowns: tuple[ScoreBreakdown, ...]
    matched_sets: tuple[tuple[str, ...], ...]
    tied_classes: tuple[str, ...]
    low_evidence: bool

    @property
    def tie(self) -> bool:
        return len(self.tied_classes) > 1

    def breakdown(self, class_name: str) -> ScoreBreakdown:
        for b in self.breakdowns:
            if b.class_name == class_name:
                return b
        raise KeyError(class_name)


def match_fraction(items: Sequence[str], keywords: AbstractSet[str]) -> Fraction:
    """Share of a set's words present in the keyword set, in [0, 1]."""
    if not items:
        raise ValueError("cannot match an empty item set")
    hits = sum(1 for w in items if w in keywords)
    return Fraction(hits, len(items))


def is_matched(items: Sequence[str], keywords: AbstractSet[str]) -> bool:
    """The half-match rule, inclusive: matched when >= half the words hit."""
    return match_fraction(items, keywords) >= HALF


def _prob_argmax(probs: dict[str, Fraction], classes: Sequence[str]) -> str:
    """Class with the highest probability; ties go to the earliest class."""
    best = classes[0]
    for cls in classes[1:]:
        if probs[cls] > probs[best]:
            best = cls
    return best


def score_class(
    table: ProbabilityTable,
    keywords: AbstractSet[str],
    class_name: str,
) -> ScoreBreakdown:
    """Tally one class's breakdown over every table row."""
    if class_name not in table.classes:
        raise KeyError(class_name)
    classes = table.classes
    owned = other = matched_owned = unmatched_other = 0
    for entry in table.entries:
        mine = _prob_argmax(entry.probs, classes) == class_name
        matched = is_matched(entry.itemset.items, keywords)
        if mine:
            owned += 1
            if matched:
                matched_owned += 1
        else:
            other += 1
            if not matched:
                unmatched_other += 1
    return ScoreBreakdown(
        class_name=class_name,
        owned_sets=owned,
        other_sets=other,
        matched_owned=matched_owned,
        unmatched_other=unmatched_other,
        prior=table.prior(class_name),
    )


def classify(table: ProbabilityTable, keywords: AbstractSet[str]) -> ClassificationResult:
    """Score every class and pick the winner.

    Ties on the total go to the earliest class in the table's class
    order, with every tied class recorded in the result.
    """
    if not table.classes:
        raise ValueError("table has no classes")
    breakdowns = tuple(score_class(table, keywords, c) for c in table.classes)
    best_total = max(b.total for b in breakdowns)
    tied = tuple(b.class_name for b in breakdowns if b.total == best_total)
    matched = tuple(
        e.itemset.items for e in table.entries if is_matched(e.itemset.items, keywords)
    )
    return ClassificationResult(
        winner=tied[0],
        breakdowns=breakdowns,
        matched_sets=matched,
        tied_classes=tied,
        low_evidence=len(keywords) == 0,
    )


def format_decimal(value: Fraction, places: int = 2) -> str:
    """Render an exact rational at fixed places, rounding half away from zero."""
    scale = 10**places
    scaled = value * scale
    if scaled >= 0:
        units = math.floor(scaled + HALF)
    else:
        units = -math.floor(-scaled + HALF)
    sign = "-" if units < 0 else ""
    whole, frac = divmod(abs(units), scale)
    return f"{sign}{whole}.{frac:0{places}d}"


def format_breakdowns(breakdowns: Iterable[ScoreBreakdown]) -> str:
    """Explainability dump: one CSV row per class.

    Columns: class, pval (sets owned), nval (sets not owned), p (owned
    and matched), n (not owned and unmatched), then the two percentages,
    the prior, and the total, each at 2 decimals.
    """
    lines = ["class,pval,nval,p,n,positive_pct,negative_pct,prior,total"]
    for b in breakdowns:
        lines.append(
            ",".join(
                (
                    b.class_name,
                    str(b.owned_sets),
                    str(b.other_sets),
                    str(b.matched_owned),
                    str(b.unmatched_other),
                    format_decimal(b.positive_pct),
                    format_decimal(b.negative_pct),
                    format_decimal(b.prior),
                    format_decimal(b.total),
                )
            )
        )
    return "\n".join(lines) + "\n"
