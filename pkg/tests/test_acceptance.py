"""Acceptance gate: the six reference criteria this library is checked against.

Each criterion is one test, so a verbose run shows one pass/fail line
per criterion. Reference values are pinned as literals; nothing here is
recomputed through the code under test. Criterion 1 as stated contains
one cell the published grid itself contradicts, so the as-stated check
is an expected failure (strict), with green companions covering every
internally consistent cell and characterizing the defect exactly.
"""

import random
import time
from fractions import Fraction

import pytest
from helpers import make_table

from wordsets import (
    ClassStats,
    ItemSet,
    MiningConfig,
    ScoreBreakdown,
    SplitSpec,
    Transaction,
    apriori,
    brute_force_frequent,
    build_table,
    classify,
    evaluate,
    format_decimal,
    load_table,
    make_synthetic_corpus,
    maximal_itemsets,
    save_table,
    split_corpus,
    train_table,
)

TOLERANCE = 5e-7

# --- criterion 1 fixture: the published five-class probability grid ---
#
# 69 sets total; per-class set counts declared below. Each row of the
# grid shows one word set, the class owning it, that class's occurrence
# count, and the five published probability cells (class order ph, ch,
# alg, ede, ai). The four ph-owned rows are kept apart: their published
# cells use a denominator of 87 where 86 (= 17 + 69) is the only
# derivable value, a documented inconsistency of the source grid.

CLASSES = ("ph", "ch", "alg", "ede", "ai")
SET_COUNTS = {"ph": 17, "ch": 25, "alg": 5, "ede": 9, "ai": 12}
TOTAL_SETS = 69

GRID = [
    (("present", "well", "formed", "parentheses", "loops"), "alg", 2,
     ("0.013514", "0.013514", "0.040541", "0.013514", "0.013514")),
    (("spanning", "tree"), "alg", 2,
     ("0.013514", "0.013514", "0.040541", "0.013514", "0.013514")),
    (("set", "length"), "alg", 2,
     ("0.013514", "0.013514", "0.040541", "0.013514", "0.013514")),
    (("educational", "significant", "study", "education", "level", "student",
      "learning"), "ede", 3,
     ("0.012821", "0.012821", "0.012821", "0.051282", "0.012821")),
    (("handicapped", "more", "different", "environment", "effect", "working",
      "motivation"), "ede", 2,
     ("0.012821", "0.012821", "0.012821", "0.038462", "0.012821")),
    (("difference", "study"), "ede", 3,
     ("0.012821", "0.012821", "0.012821", "0.051282", "0.012821")),
    (("test", "significant", "difference"), "ede", 2,
     ("0.012821", "0.012821", "0.012821", "0.038462", "0.012821")),
    (("gain", "dependencies"), "ai", 2,
     ("0.012346", "0.012346", "0.012346", "0.012346", "0.037037")),
    (("network", "neural"), "ai", 5,
     ("0.012346", "0.012346", "0.012346", "0.012346", "0.074074")),
    (("channel", "rate"), "ai", 2,
     ("0.012346", "0.012346", "0.012346", "0.012346", "0.037037")),
    (("rate", "different"), "ai", 3,
     ("0.012346", "0.012346", "0.012346", "0.012346", "0.049383")),
    (("calculate", "raman", "response", "fifth", "order"), "ch", 2,
     ("0.010638", "0.031915", "0.010638", "0.010638", "0.010638")),
    (("scalar", "included", "approximation", "dielectric", "function"), "ch", 2,
     ("0.010638", "0.031915", "0.010638", "0.010638", "0.010638")),
    (("dirac", "fock"), "ch", 2,
     ("0.010638", "0.031915", "0.010638", "0.010638", "0.010638")),
    (("hartree", "fock"), "ch", 3,
     ("0.010638", "0.031915", "0.010638", "0.010638", "0.010638")),
    (("excited", "using"), "ch", 3,
     ("0.010638", "0.042553", "0.010638", "0.010638", "0.010638")),
]

# the published "hartree, fock" row prints count 3 but a probability
# only count 2 yields; every other cell of the grid is consistent
DEFECT_ROW = ("fock", "hartree")

PH_GRID = [
    (("cold", "dark"), 2),
    (("obtained", "alpha", "line"), 2),
    (("nuclear", "collapse", "simulation"), 2),
    (("giant", "planet", "due"), 2),
]


def reference_table():
    sets = [
        ItemSet.make(items, {c: (count if c == owner else 0) for c in CLASSES})
        for items, owner, count, _ in GRID
    ] + [
        ItemSet.make(items, {c: (count if c == "ph" else 0) for c in CLASSES})
        for items, count in PH_GRID
    ]
    stats = [
        ClassStats(class_name=c, set_count=SET_COUNTS[c],
                   prior=Fraction(SET_COUNTS[c], TOTAL_SETS))
        for c in CLASSES
    ]
    return build_table(sets, stats, total_sets=TOTAL_SETS)


def grid_mismatches(skip_defect_cell):
    table = reference_table()
    entry_by_items = {e.itemset.items: e for e in table.entries}
    checked = 0
    mismatches = []
    for items, owner, _, expected_cells in GRID:
        entry = entry_by_items[tuple(sorted(items))]
        assert entry.owner == owner
        for c, expected in zip(CLASSES, expected_cells):
            if skip_defect_cell and tuple(sorted(items)) == DEFECT_ROW and c == "ch":
                continue
            checked += 1
            if abs(float(entry.probs[c]) - float(expected)) > TOLERANCE:
                mismatches.append((entry.itemset.items, c, entry.probs[c], expected))
    return checked, mismatches


def test_criterion_1_probability_grid_consistent_cells():
    """Criterion 1 (attainable portion): all internally consistent cells.

    The 16 non-ph rows carry 80 published cells; 79 are reproduced to
    within 5e-7 from the published counts alone. The one exception is
    checked by the companion tests below.
    """
    checked, mismatches = grid_mismatches(skip_defect_cell=True)
    assert checked == 79
    assert mismatches == []
    print(f"criterion 1: {checked}/79 consistent grid cells within {TOLERANCE}")


@pytest.mark.xfail(
    strict=True,
    reason=(
        "one published cell contradicts its own published count: the "
        "('fock', 'hartree') row prints count 3 yet a probability equal to "
        "(2+1)/94; no function of the published inputs yields both"
    ),
)
def test_criterion_1_probability_grid_as_stated():
    """Criterion 1 as stated: every non-ph cell within 5e-7."""
    checked, mismatches = grid_mismatches(skip_defect_cell=False)
    print(f"criterion 1 (as stated): {checked - len(mismatches)}/{checked} cells match")
    assert mismatches == []


def test_criterion_1_documented_inconsistencies():
    """Pin the two defects of the published grid exactly.

    First, the ('fock', 'hartree') cell: from its published count 3 the
    computed value is (3+1)/94, while the printed 0.031915 equals
    (2+1)/94 — what count 2 would give. Second, the four ph-owned rows
    print values with denominator 87 although 86 = 17 + 69 is the only
    value derivable from the declared counts.
    """
    table = reference_table()
    entry = next(e for e in table.entries if e.itemset.items == DEFECT_ROW)
    assert entry.probs["ch"] == Fraction(4, 94)
    assert abs(float(Fraction(3, 94)) - 0.031915) <= TOLERANCE
    assert abs(float(entry.probs["ch"]) - 0.031915) > TOLERANCE

    for items, _ in PH_GRID:
        e = next(t for t in table.entries if t.itemset.items == tuple(sorted(items)))
        assert e.probs["ph"] == Fraction(3, 86)
        assert abs(float(Fraction(3, 87)) - 0.034483) <= TOLERANCE
        assert abs(float(e.probs["ph"]) - 0.034483) > TOLERANCE
    print("criterion 1: grid defects characterized exactly")


def test_criterion_2_worked_example_arithmetic():
    """Criterion 2: the reference score breakdown, exact and rendered."""
    breakdown = ScoreBreakdown(
        class_name="ch",
        owned_sets=25,
        other_sets=44,
        matched_owned=2,
        unmatched_other=43,
        prior=Fraction("0.36"),
    )
    assert breakdown.total == Fraction(29174, 275)
    assert format_decimal(breakdown.total, 4) == "106.0873"
    assert format_decimal(breakdown.total, 2) == "106.09"
    print("criterion 2: total = 29174/275, renders 106.0873 / 106.09")


def test_criterion_3_miner_matches_brute_force_oracle():
    """Criterion 3: >= 1000 random cases, miner == exhaustive enumeration."""
    rng = random.Random(20260814)
    cases = 0
    for _ in range(1000):
        n_tx = rng.randint(1, 8)
        transactions = [
            Transaction(
                doc_id=f"t{i}",
                items=frozenset(rng.sample("abcdef", rng.randint(0, 6))),
            )
            for i in range(n_tx)
        ]
        support = rng.randint(1, n_tx)
        frequent = apriori(transactions, MiningConfig(min_support=support))
        oracle = brute_force_frequent(transactions, support)
        assert frequent == oracle

        oracle_sets = {frozenset(items) for items, _ in oracle}
        expected_maximal = [
            (items, count)
            for items, count in oracle
            if not any(frozenset(items) < other for other in oracle_sets)
        ]
        assert maximal_itemsets(frequent) == expected_maximal
        cases += 1
    assert cases == 1000
    print("criterion 3: 1000/1000 random cases equal the brute-force oracle")


def test_criterion_4_split_size_grid():
    """Criterion 4: per-class train counts against the reference grid.

    Class sizes (104, 88, 27, 15, 62); eight of the nine fraction rows
    are exact. The published 0.50 row is one lower in every cell than
    any half-away-from-zero rounding of the products (each of which
    lands exactly on .5 or on .0) can produce; it is pinned here as the
    documented anomaly.
    """
    class_sizes = (104, 88, 27, 15, 62)
    grid = {
        "0.15": (16, 13, 4, 2, 9),
        "0.20": (21, 18, 5, 3, 12),
        "0.25": (26, 22, 7, 4, 16),
        "0.30": (31, 26, 8, 5, 19),
        "0.35": (36, 31, 10, 5, 22),
        "0.40": (42, 35, 11, 6, 25),
        "0.45": (47, 40, 12, 7, 28),
        "0.50": (51, 43, 13, 7, 30),  # anomaly: see docstring
        "0.55": (57, 48, 15, 8, 34),
    }
    exact_rows = 0
    for fraction, expected in grid.items():
        computed = tuple(SplitSpec(fraction).train_size(n) for n in class_sizes)
        if fraction == "0.50":
            assert computed == (52, 44, 14, 8, 31)
            assert computed == tuple(v + 1 for v in expected)
        else:
            assert computed == expected
            exact_rows += 1
    assert exact_rows == 8
    print("criterion 4: 8/9 grid rows exact; 0.50 row anomaly pinned")


def test_criterion_5_end_to_end_synthetic_accuracy():
    """Criterion 5: 5-class disjoint-vocabulary corpus, 50% train, >= 0.95.

    Separability is verified by independent counting before anything is
    trained: every token occurring in more than one document belongs to
    exactly one class.
    """
    started = time.perf_counter()
    corpus = make_synthetic_corpus()
    assert len(corpus) == 100
    assert len(corpus.classes) == 5

    docs_with, classes_with = {}, {}
    for doc, label in zip(corpus.documents, corpus.labels):
        for token in set(doc.text.split()):
            docs_with[token] = docs_with.get(token, 0) + 1
            classes_with.setdefault(token, set()).add(label)
    shared = [t for t, n in docs_with.items() if n > 1]
    assert shared, "corpus has no repeated vocabulary to learn from"
    assert all(len(classes_with[t]) == 1 for t in shared)

    train, test = split_corpus(corpus, SplitSpec("0.5", seed=0))
    table = train_table(train, stopwords=frozenset())
    report = evaluate(
        table,
        test,
        stopwords=frozenset(),
        train_ids=[d.id for d in train.documents],
    )
    elapsed = time.perf_counter() - started
    assert report.leaked_ids == ()
    assert report.accuracy >= Fraction(95, 100)
    assert elapsed < 10.0
    print(
        f"criterion 5: accuracy {format_decimal(report.accuracy, 4)} "
        f">= 0.95 in {elapsed:.2f}s"
    )


CLASSES3 = ("c0", "c1", "c2")


def random_rows(rng):
    rows = {}
    while len(rows) < rng.randint(1, 6):
        items = tuple(sorted(rng.sample("pqrst", rng.randint(1, 3))))
        counts = {c: rng.randint(0, 5) for c in CLASSES3}
        if not any(counts.values()):
            counts[rng.choice(CLASSES3)] = rng.randint(1, 5)
        rows[items] = counts
    return [(list(items), counts) for items, counts in rows.items()]


def random_keywords(rng):
    return frozenset(rng.sample("pqrst", rng.randint(0, 5)))


def test_criterion_6_substitute_invariant_suites(tmp_path):
    """Criterion 6: the reference accuracy-versus-training-fraction
    figures cannot be recomputed because the document collection behind
    them is not distributed. In their place, five behavioural invariant
    suites run under a shared 30-second budget (with the end-to-end
    synthetic run of criterion 5 standing in for headline accuracy).
    """
    started = time.perf_counter()
    rng = random.Random(6)

    # every subset of a frequent set is frequent, at least as often
    for _ in range(150):
        transactions = [
            Transaction(
                doc_id=f"t{i}",
                items=frozenset(rng.sample("abcdefgh", rng.randint(0, 8))),
            )
            for i in range(rng.randint(1, 10))
        ]
        frequent = dict(
            apriori(transactions, MiningConfig(min_support=rng.randint(1, 3)))
        )
        for items, count in frequent.items():
            for drop in range(len(items)):
                subset = items[:drop] + items[drop + 1 :]
                if subset:
                    assert frequent[subset] >= count

    # each class's owned and foreign rows partition the whole table
    for _ in range(150):
        table = make_table(random_rows(rng), CLASSES3)
        for b in classify(table, random_keywords(rng)).breakdowns:
            assert b.owned_sets + b.other_sets == len(table.entries)

    # adding a keyword never loses an owned match, never gains a foreign miss
    for _ in range(150):
        table = make_table(random_rows(rng), CLASSES3)
        keywords = random_keywords(rng)
        grown = classify(table, keywords | {rng.choice("pqrst")})
        base = classify(table, keywords)
        for before, after in zip(base.breakdowns, grown.breakdowns):
            assert after.matched_owned >= before.matched_owned
            assert after.unmatched_other <= before.unmatched_other

    # scaling every count by a constant changes no ownership, so no winner
    for _ in range(80):
        rows = random_rows(rng)
        k = rng.choice((2, 3, 5))
        scaled = [
            (items, {c: v * k for c, v in counts.items()}) for items, counts in rows
        ]
        keywords = random_keywords(rng)
        assert (
            classify(make_table(scaled, CLASSES3), keywords).winner
            == classify(make_table(rows, CLASSES3), keywords).winner
        )

    # a saved model reloads to the identical table
    for i in range(40):
        table = make_table(random_rows(rng), CLASSES3,
                           mode=rng.choice(("owner-row", "per-class")))
        path = tmp_path / f"model{i}.json"
        save_table(table, path)
        assert load_table(path) == table

    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    print(f"criterion 6: five invariant suites passed in {elapsed:.1f}s (budget 30s)")
