"""Shared constructors for hand-built probability tables."""

from fractions import Fraction

from wordsets import ClassStats, ItemSet, build_table


def make_table(rows, classes, mode="owner-row", total_sets=None):
    """Build a table from (items, {class: count}) rows.

    Ownership and priors are derived the same way training does: each
    row belongs to the class with the highest count (earlier class wins
    ties), and a class's prior is its share of the rows.
    """
    sets = [
        ItemSet.make(items, {c: counts.get(c, 0) for c in classes})
        for items, counts in rows
    ]
    owned = {c: 0 for c in classes}
    for _, counts in rows:
        best = max(classes, key=lambda c: (counts.get(c, 0), -classes.index(c)))
        owned[best] += 1
    total = total_sets if total_sets is not None else len(rows)
    stats = [
        ClassStats(class_name=c, set_count=owned[c], prior=Fraction(owned[c], total))
        for c in classes
    ]
    return build_table(sets, stats, total_sets=total, mode=mode)
