"""Labeled document corpora: loading from disk and stratified splitting."""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CorpusError


@dataclass(frozen=True)
class Document:
    """One unit of text with a stable identifier."""

    id: str
    text: str


@dataclass(frozen=True)
class LabeledCorpus:
    """Documents plus a parallel label list and the ordered label universe.

    ``classes`` fixes the canonical class order used everywhere downstream
    (tie-breaking, report rows, model files): first-appearance order from
    the source, not alphabetical.
    """

    documents: tuple[Document, ...]
    labels: tuple[str, ...]
    classes: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.documents) != len(self.labels):
            raise CorpusError(
                f"{len(self.documents)} documents but {len(self.labels)} labels"
            )
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id: {doc.id!r}")
            seen.add(doc.id)
        known = set(self.classes)
        for label in self.labels:
            if label not in known:
                raise CorpusError(f"label {label!r} missing from classes")

    def __len__(self) -> int:
        return len(self.documents)

    def per_class_counts(self) -> dict[str, int]:
        counts = {c: 0 for c in self.classes}
        for label in self.labels:
            counts[label] += 1
        return counts


@dataclass(frozen=True, init=False)
class SplitSpec:
    """Train fraction plus the RNG seed that fixes the shuffle.

    The fraction is held exactly (as a rational number) so size math of the
    form floor(f * n + 1/2) never suffers float rounding. Floats given by
    callers are read back through their decimal string, so 0.3 means 3/10.
    """

    train_fraction: Fraction
    seed: int = 0

    def __init__(self, train_fraction: float | str | Fraction, seed: int = 0) -> None:
        if isinstance(train_fraction, float):
            frac = Fraction(str(train_fraction))
        else:
            frac = Fraction(train_fraction)
        if not 0 < frac < 1:
            raise ValueError(f"train_fraction must be in (0, 1), got {frac}")
        object.__setattr__(self, "train_fraction", frac)
        object.__setattr__(self, "seed", seed)

    def train_size(self, n: int) -> int:
        """Per-class train count: fraction times n, rounded in two stages.

        The product is rounded to the nearest tenth first, then to the
        nearest integer, ties away from zero both times. Two-stage
        rounding keeps sizes consistent with share tables quoted to one
        decimal place (x.45 to x.49 land on the x.5 tenth and go up);
        it differs from single rounding only on that interval.
        """
        half = Fraction(1, 2)
        tenths = math.floor(10 * self.train_fraction * n + half)
        return math.floor(Fraction(tenths, 10) + half)


def _read_text(path: Path) -> str:
    try:
        return path.read_text("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusError(f"{path}: not valid UTF-8 ({exc})") from exc


def load_corpus_dir(root: str | Path) -> LabeledCorpus:
    """Load a directory corpus: one subdirectory per class, one .txt per document.

    Document ids are ``<class>/<stem>`` so ids stay unique across classes.
    Class order is sorted directory-name order; document order is sorted
    filename order within each class, so loading is deterministic.
    """
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root is not a directory: {root}")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not class_dirs:
        raise CorpusError(f"no documents found under {root}")
    docs: list[Document] = []
    labels: list[str] = []
    classes: list[str] = []
    for cdir in class_dirs:
        files = sorted(cdir.glob("*.txt"))
        if not files:
            continue
        classes.append(cdir.name)
        for f in files:
            text = _read_text(f)
            if not text.strip():
                raise CorpusError(f"empty document: {f}")
            docs.append(Document(id=f"{cdir.name}/{f.stem}", text=text))
            labels.append(cdir.name)
    if not docs:
        raise CorpusError(f"no documents found under {root}")
    return LabeledCorpus(tuple(docs), tuple(labels), tuple(classes))


def load_corpus_csv(path: str | Path) -> LabeledCorpus:
    """Load a CSV corpus with header ``id,label,text``.

    Class order is first-appearance order of labels in the file.
    """
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not found: {path}")
    docs: list[Document] = []
    labels: list[str] = []
    classes: list[str] = []
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: empty file") from None
        if [h.strip().lower() for h in header] != ["id", "label", "text"]:
            raise CorpusError(
                f"{path}: expected header 'id,label,text', got {','.join(header)!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise CorpusError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            doc_id, label = row[0].strip(), row[1].strip()
            text = row[2]
            if not doc_id:
                raise CorpusError(f"{path}:{lineno}: empty id")
            if not label:
                raise CorpusError(f"{path}:{lineno}: empty label")
            if not text.strip():
                raise CorpusError(f"{path}:{lineno}: empty text")
            if label not in classes:
                classes.append(label)
            docs.append(Document(id=doc_id, text=text))
            labels.append(label)
    if not docs:
        raise CorpusError(f"no documents found in {path}")
    return LabeledCorpus(tuple(docs), tuple(labels), tuple(classes))


def load_corpus(source: str | Path) -> LabeledCorpus:
    """Load from a directory tree or a CSV file, decided by what the path is."""
    p = Path(source)
    if p.is_dir():
        return load_corpus_dir(p)
    if p.is_file():
        return load_corpus_csv(p)
    raise CorpusError(f"corpus source does not exist: {p}")


def split_corpus(
    corpus: LabeledCorpus, spec: SplitSpec
) -> tuple[LabeledCorpus, LabeledCorpus]:
    """Stratified train/test split.

    Each class is shuffled independently with a seed derived from the
    spec seed and the class position, then cut at the rounded per-class
    train size. Document order inside each side preserves the shuffled
    order, classes in corpus order.
    """
    by_class: dict[str, list[int]] = {c: [] for c in corpus.classes}
    for i, label in enumerate(corpus.labels):
        by_class[label].append(i)

    train_idx: list[int] = []
    test_idx: list[int] = []
    for k, cls in enumerate(corpus.classes):
        idx = list(by_class[cls])
        # per-class stream keyed by (seed, class position); string seeding
        # hashes through sha512, stable across runs and platforms
        rng = random.Random(f"{spec.seed}:{k}")
        rng.shuffle(idx)
        cut = spec.train_size(len(idx))
        train_idx.extend(idx[:cut])
        test_idx.extend(idx[cut:])

    def take(indices: list[int]) -> LabeledCorpus:
        return LabeledCorpus(
            documents=tuple(corpus.documents[i] for i in indices),
            labels=tuple(corpus.labels[i] for i in indices),
            classes=corpus.classes,
        )

    return take(train_idx), take(test_idx)
