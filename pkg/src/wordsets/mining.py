"""Frequent word-set mining over document transactions.

Level-wise Apriori with candidate pruning, reduction to maximal sets,
and per-class mining whose results are merged and recounted against
every class so each surviving set carries a full count vector.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import MiningError
from .preprocess import Transaction


@dataclass(frozen=True, init=False)
class MiningConfig:
    """Thresholds for one mining run.

    ``min_support`` takes either form: an int is an absolute transaction
    count, anything fractional (float, Fraction, decimal string) is a
    share of the transaction list, in (0, 1]. Exactly one form is kept.
    ``min_confidence`` is validated and carried for rule-style workflows
    but the default pipeline never consumes it: classification uses the
    sets themselves, not rules derived from them.
    """

    support_count: int | None
    support_fraction: Fraction | None
    min_confidence: Fraction
    max_itemset_size: int | None

    def __init__(
        self,
        min_support: int | float | str | Fraction = 2,
        min_confidence: float | str | Fraction = 0.75,
        max_itemset_size: int | None = None,
    ) -> None:
        count: int | None = None
        fraction: Fraction | None = None
        if isinstance(min_support, bool):
            raise MiningError("min_support must be a count or a fraction, not a bool")
        if isinstance(min_support, int):
            if min_support < 1:
                raise MiningError(f"absolute min_support must be >= 1, got {min_support}")
            count = min_support
        else:
            if isinstance(min_support, float):
                fraction = Fraction(str(min_support))
            else:
                fraction = Fraction(min_support)
            if not 0 < fraction <= 1:
                raise MiningError(f"fractional min_support must be in (0, 1], got {fraction}")
        if isinstance(min_confidence, float):
            conf = Fraction(str(min_confidence))
        else:
            conf = Fraction(min_confidence)
        if not 0 < conf <= 1:
            raise MiningError(f"min_confidence must be in (0, 1], got {conf}")
        if max_itemset_size is not None and max_itemset_size < 1:
            raise MiningError(f"max_itemset_size must be >= 1, got {max_itemset_size}")
        object.__setattr__(self, "support_count", count)
        object.__setattr__(self, "support_fraction", fraction)
        object.__setattr__(self, "min_confidence", conf)
        object.__setattr__(self, "max_itemset_size", max_itemset_size)

    def effective_support(self, n_transactions: int) -> int:
        """Resolve the threshold to an absolute count for a given list size."""
        if self.support_count is not None:
            return self.support_count
        assert self.support_fraction is not None
        support = math.ceil(self.support_fraction * n_transactions)
        if support < 1:
            raise MiningError(
                f"effective support {support} < 1 for {n_transactions} transactions"
            )
        return support


@dataclass(frozen=True)
class ItemSet:
    """A mined word set with its occurrence count in every class.

    ``items`` is kept sorted so equal sets always compare, hash, and
    serialize identically.
    """

    items: tuple[str, ...]
    class_counts: dict[str, int]

    @staticmethod
    def make(items: Iterable[str], class_counts: Mapping[str, int]) -> "ItemSet":
        return ItemSet(tuple(sorted(items)), dict(class_counts))


def canonical_items(items: Iterable[str]) -> tuple[str, ...]:
    """Sorted-tuple form of an item collection."""
    return tuple(sorted(items))


def sort_key(items: tuple[str, ...]) -> tuple[int, tuple[str, ...]]:
    """Canonical listing order: by size, then lexicographic."""
    return (len(items), items)


def apriori(
    transactions: Sequence[Transaction],
    config: MiningConfig,
) -> list[tuple[tuple[str, ...], int]]:
    """Return every frequent itemset with its exact support count.

    Classic level-wise search: frequent singletons seed level 1, each
    next level joins same-prefix pairs and prunes any candidate with an
    infrequent subset, then counts candidates exactly by containment.
    Output covers all levels and is canonically ordered.
    """
    if not transactions:
        raise MiningError("cannot mine an empty transaction list")
    min_support = config.effective_support(len(transactions))
    item_sets = [t.items for t in transactions]

    single_counts = Counter(item for items in item_sets for item in items)
    current: dict[tuple[str, ...], int] = {
        (item,): count
        for item, count in single_counts.items()
        if count >= min_support
    }

    frequent: dict[tuple[str, ...], int] = {}
    size = 1
    while current:
        frequent.update(current)
        if config.max_itemset_size is not None and size >= config.max_itemset_size:
            break
        candidates = _next_candidates(sorted(current), size)
        if not candidates:
            break
        counts = Counter(
            cand
            for items in item_sets
            for cand in candidates
            if cand <= items
        )
        size += 1
        current = {
            canonical_items(cand): count
            for cand, count in counts.items()
            if count >= min_support
        }

    return sorted(frequent.items(), key=lambda kv: sort_key(kv[0]))


def _next_candidates(
    frequent_level: list[tuple[str, ...]], size: int
) -> set[frozenset[str]]:
    """Join same-prefix pairs of size-k sets, pruning by infrequent subsets."""
    known = set(frequent_level)
    candidates: set[frozenset[str]] = set()
    for i, a in enumerate(frequent_level):
        for b in frequent_level[i + 1 :]:
            if a[:-1] != b[:-1]:
                break
            joined = a + (b[-1],)
            if all(
                joined[:k] + joined[k + 1 :] in known for k in range(size + 1)
            ):
                candidates.add(frozenset(joined))
    return candidates


def maximal_itemsets(
    frequent: Sequence[tuple[tuple[str, ...], int]],
) -> list[tuple[tuple[str, ...], int]]:
    """Keep only frequent sets with no frequent proper superset.

    Input must be downward-closed (as apriori output is), so checking
    one-larger supersets suffices: any bigger superset implies one.
    """
    by_size: dict[int, set[frozenset[str]]] = {}
    for items, _ in frequent:
        by_size.setdefault(len(items), set()).add(frozenset(items))
    out = []
    for items, count in frequent:
        parents = by_size.get(len(items) + 1, ())
        fs = frozenset(items)
        if not any(fs < parent for parent in parents):
            out.append((items, count))
    return sorted(out, key=lambda kv: sort_key(kv[0]))


def mine_per_class(
    transactions_by_class: Mapping[str, Sequence[Transaction]],
    config: MiningConfig,
) -> list[ItemSet]:
    """Mine each class separately, merge, and complete the count vectors.

    Every class's transactions are mined at that class's effective
    support; the maximal sets are merged (a set found in two classes
    appears once), then each surviving set is recounted against every
    class so its count vector has an entry for all classes, including
    classes that never mined it.
    """
    classes = list(transactions_by_class)
    if not classes:
        raise MiningError("no classes to mine")
    mined: set[tuple[str, ...]] = set()
    for cls in classes:
        found = apriori(transactions_by_class[cls], config)
        mined.update(items for items, _ in maximal_itemsets(found))

    result = []
    for items in sorted(mined, key=sort_key):
        fs = frozenset(items)
        counts = {
            cls: sum(1 for t in transactions_by_class[cls] if fs <= t.items)
            for cls in classes
        }
        result.append(ItemSet(items=items, class_counts=counts))
    return result


def brute_force_frequent(
    transactions: Sequence[Transaction], min_support: int
) -> list[tuple[tuple[str, ...], int]]:
    """Exhaustive reference miner: enumerate every subset of every size.

    Exponential in the item universe; exists to cross-check apriori on
    small inputs, not for production use.
    """
    if not transactions:
        raise MiningError("cannot mine an empty transaction list")
    if min_support < 1:
        raise MiningError(f"min_support must be >= 1, got {min_support}")
    universe = sorted({item for t in transactions for item in t.items})
    out = []
    for size in range(1, len(universe) + 1):
        for combo in combinations(universe, size):
            fs = frozenset(combo)
            count = sum(1 for t in transactions if fs <= t.items)
            if count >= min_support:
                out.append((combo, count))
    return sorted(out, key=lambda kv: sort_key(kv[0]))


def format_transactions(transactions: Iterable[Transaction]) -> str:
    """Render transactions one per line: doc id, then space-separated items."""
    lines = [
        f"{t.doc_id}\t{' '.join(sorted(t.items))}"
        for t in transactions
    ]
    return "\n".join(lines) + "\n" if lines else ""
