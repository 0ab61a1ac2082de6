"""Probability table over mined word sets, with class priors and persistence.

Each mined set gets an owning class (the class where it occurred most)
and a Laplace-smoothed probability per class. A class's prior is its
share of owned sets. The table serializes to versioned JSON in which
the raw counts are the source of truth: probabilities are recomputed
on load, never stored.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from .errors import (
    ModelChecksumError,
    ModelError,
    ModelFormatError,
    ModelVersionError,
)
from .mining import ItemSet, sort_key

MODEL_FORMAT = "wordsets-model"
MODEL_VERSION = 1

SMOOTHING_MODES = ("owner-row", "per-class")


@dataclass(frozen=True)
class ClassStats:
    """One class's share of the mined sets: how many it owns, and its prior."""

    class_name: str
    set_count: int
    prior: Fraction


@dataclass(frozen=True)
class TableEntry:
    """One table row: a word set, its owning class, per-class probabilities."""

    itemset: ItemSet
    owner: str
    probs: dict[str, Fraction]


@dataclass(frozen=True)
class ProbabilityTable:
    """The trained model: entries plus per-class stats.

    ``total_sets`` is the declared size of the set universe used in the
    smoothing denominators and priors. When stats come from
    attribute_sets over the same itemsets it equals len(entries), but it
    is kept as declared data so a table can be built against externally
    supplied per-class figures.
    """

    entries: tuple[TableEntry, ...]
    class_stats: tuple[ClassStats, ...]
    total_sets: int
    mode: str

    @property
    def classes(self) -> tuple[str, ...]:
        return tuple(s.class_name for s in self.class_stats)

    def prior(self, class_name: str) -> Fraction:
        for s in self.class_stats:
            if s.class_name == class_name:
                return s.prior
        raise KeyError(class_name)

    def set_count(self, class_name: str) -> int:
        for s in self.class_stats:
            if s.class_name == class_name:
                return s.set_count
        raise KeyError(class_name)


def _count_argmax(counts: Mapping[str, int], classes: Sequence[str]) -> str:
    """Class with the highest count; ties go to the earliest class."""
    best = classes[0]
    best_count = counts.get(best, 0)
    for cls in classes[1:]:
        c = counts.get(cls, 0)
        if c > best_count:
            best, best_count = cls, c
    return best


def attribute_sets(
    itemsets: Sequence[ItemSet], classes: Sequence[str]
) -> tuple[tuple[str, ...], tuple[ClassStats, ...]]:
    """Assign each set an owner and derive per-class stats.

    The owner is the class with the highest occurrence count (earliest
    class on ties). A class's set_count is the number of sets it owns;
    its prior is that count over the total number of sets.
    """
    if not itemsets:
        raise ModelError("no itemsets to attribute")
    if not classes:
        raise ModelError("no classes given")
    owners = []
    for its in itemsets:
        if all(its.class_counts.get(c, 0) == 0 for c in classes):
            raise ModelError(
                f"cannot attribute set {its.items}: all class counts are zero"
            )
        owners.append(_count_argmax(its.class_counts, classes))
    total = len(itemsets)
    owned = {c: 0 for c in classes}
    for owner in owners:
        owned[owner] += 1
    stats = tuple(
        ClassStats(class_name=c, set_count=owned[c], prior=Fraction(owned[c], total))
        for c in classes
    )
    return tuple(owners), stats


def build_table(
    itemsets: Sequence[ItemSet],
    class_stats: Sequence[ClassStats],
    total_sets: int | None = None,
    mode: str = "owner-row",
) -> ProbabilityTable:
    """Compute the smoothed probability table.

    In owner-row mode (default) a row's denominator comes from its
    owner: probs[c] = (count_c + 1) / (owner's set_count + total_sets),
    constant across the row. In per-class mode each class brings its own
    denominator: probs[c] = (count_c + 1) / (set_count_c + total_sets).

    class_stats and total_sets are taken as declared; they normally come
    from attribute_sets but may be supplied directly to rebuild a table
    against known per-class figures.
    """
    if mode not in SMOOTHING_MODES:
        raise ModelError(f"unknown smoothing mode {mode!r}; expected one of {SMOOTHING_MODES}")
    if not itemsets:
        raise ModelError("cannot build a table from zero itemsets")
    classes = [s.class_name for s in class_stats]
    if len(set(classes)) != len(classes):
        raise ModelError("duplicate class in class_stats")
    if not classes:
        raise ModelError("no classes given")
    if total_sets is None:
        total_sets = sum(s.set_count for s in class_stats)
    if total_sets < 1:
        raise ModelError(f"total_sets must be >= 1, got {total_sets}")
    by_class = {s.class_name: s for s in class_stats}

    entries = []
    for its in itemsets:
        owner = _count_argmax(its.class_counts, classes)
        probs: dict[str, Fraction] = {}
        for c in classes:
            if mode == "owner-row":
                denom = by_class[owner].set_count + total_sets
            else:
                denom = by_class[c].set_count + total_sets
            probs[c] = Fraction(its.class_counts.get(c, 0) + 1, denom)
        entries.append(TableEntry(itemset=its, owner=owner, probs=probs))

    entries.sort(key=lambda e: sort_key(e.itemset.items))
    return ProbabilityTable(
        entries=tuple(entries),
        class_stats=tuple(class_stats),
        total_sets=total_sets,
        mode=mode,
    )


def _payload(table: ProbabilityTable) -> dict:
    return {
        "format": MODEL_FORMAT,
        "version": MODEL_VERSION,
        "mode": table.mode,
        "classes": list(table.classes),
        "total_sets": table.total_sets,
        "priors": {
            s.class_name: f"{s.prior.numerator}/{s.prior.denominator}"
            for s in table.class_stats
        },
        "entries": [
            {
                "items": list(e.itemset.items),
                "counts": {c: e.itemset.class_counts.get(c, 0) for c in table.classes},
                "owner": e.owner,
            }
            for e in table.entries
        ],
    }


def _checksum(payload: dict) -> str:
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def save_table(table: ProbabilityTable, path: str | Path) -> None:
    """Write the table as versioned JSON with an integrity checksum.

    Output is byte-identical for equal tables: keys sorted, entries in
    the table's canonical order.
    """
    payload = _payload(table)
    payload["checksum"] = _checksum(payload)
    Path(path).write_text(
        json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def _parse_prior(raw: object, class_name: str) -> Fraction:
    if not isinstance(raw, str):
        raise ModelFormatError(f"prior for {class_name!r} must be a string")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"bad prior for {class_name!r}: {raw!r}") from exc


def load_table(path: str | Path) -> ProbabilityTable:
    """Load a table written by save_table, recomputing all probabilities.

    Counts in the file are the source of truth; smoothed values and
    owners are rebuilt and cross-checked, so a hand-edited file that
    contradicts itself is rejected rather than trusted.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ModelError(f"model file not found: {path}") from None
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(
            f"{path}: invalid JSON at byte offset {exc.pos}: {exc.msg}"
        ) from exc
    if not isinstance(raw, dict) or raw.get("format") != MODEL_FORMAT:
        raise ModelFormatError(f"{path}: not a {MODEL_FORMAT} file")
    version = raw.get("version")
    if version != MODEL_VERSION:
        raise ModelVersionError(
            f"{path}: unsupported model version {version!r}; this build reads version {MODEL_VERSION}"
        )

    stated = raw.get("checksum")
    body = {k: v for k, v in raw.items() if k != "checksum"}
    actual = _checksum(body)
    if stated != actual:
        raise ModelChecksumError(
            f"{path}: checksum mismatch (file says {stated!r}, content hashes to {actual!r})"
        )

    try:
        mode = raw["mode"]
        classes = raw["classes"]
        total_sets = raw["total_sets"]
        priors_raw = raw["priors"]
        entries_raw = raw["entries"]
    except KeyError as exc:
        raise ModelFormatError(f"{path}: missing field {exc.args[0]!r}") from None
    if mode not in SMOOTHING_MODES:
        raise ModelFormatError(f"{path}: unknown smoothing mode {mode!r}")
    if not isinstance(classes, list) or not all(isinstance(c, str) for c in classes):
        raise ModelFormatError(f"{path}: classes must be a list of strings")
    if not isinstance(total_sets, int) or total_sets < 1:
        raise ModelFormatError(f"{path}: total_sets must be a positive integer")

    stats = []
    for c in classes:
        if c not in priors_raw:
            raise ModelFormatError(f"{path}: missing prior for class {c!r}")
        prior = _parse_prior(priors_raw[c], c)
        set_count = prior * total_sets
        if set_count.denominator != 1:
            raise ModelFormatError(
                f"{path}: prior {priors_raw[c]!r} for {c!r} is not a whole share of {total_sets} sets"
            )
        stats.append(ClassStats(class_name=c, set_count=int(set_count), prior=prior))

    itemsets = []
    declared_owner: dict[tuple[str, ...], str] = {}
    for i, e in enumerate(entries_raw):
        try:
            items = e["items"]
            counts = e["counts"]
            owner = e["owner"]
        except (TypeError, KeyError):
            raise ModelFormatError(f"{path}: entry {i} is malformed") from None
        if not items or not all(isinstance(w, str) for w in items):
            raise ModelFormatError(f"{path}: entry {i} has invalid items")
        if owner not in classes:
            raise ModelFormatError(f"{path}: entry {i} owner {owner!r} is not a known class")
        if not all(isinstance(v, int) and v >= 0 for v in counts.values()):
            raise ModelFormatError(f"{path}: entry {i} has invalid counts")
        its = ItemSet.make(items, {c: counts.get(c, 0) for c in classes})
        if its.items in declared_owner:
            raise ModelFormatError(f"{path}: duplicate entry for set {its.items}")
        itemsets.append(its)
        declared_owner[its.items] = owner

    table = build_table(itemsets, stats, total_sets=total_sets, mode=mode)
    for entry in table.entries:
        declared = declared_owner[entry.itemset.items]
        if entry.owner != declared:
            raise ModelFormatError(
                f"{path}: owner {declared!r} for set {entry.itemset.items} disagrees with its counts"
            )
    return table
