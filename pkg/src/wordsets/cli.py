"""Command-line interface: train, classify, evaluate, curve, inspect.

Every subcommand is batch-oriented and deterministic: identical inputs,
flags, and seeds produce byte-identical primary outputs. Options can
also come from a JSON config file (--config); explicit flags win over
the file, the file wins over built-in defaults. The stopword list can
be overridden by --stopwords or, failing that, the WORDSETS_STOPWORDS
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .classifier import format_breakdowns, format_decimal
from .corpus import load_corpus
from .errors import WordsetsError
from .evaluation import (
    evaluate,
    format_curve_csv,
    format_curve_json,
    format_report_csv,
    format_report_json,
    learning_curve,
)
from .mining import MiningConfig, format_transactions
from .model import SMOOTHING_MODES, load_table, save_table
from .pipeline import build_transactions, classify_text, train_table
from .preprocess import load_stopwords

STOPWORDS_ENV = "WORDSETS_STOPWORDS"

DEFAULT_FRACTIONS = "0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55"
DEFAULT_SEEDS = "0,1,2"

CONFIG_KEYS = frozenset(
    {
        "stopwords",
        "min_doc_freq",
        "support_count",
        "support_fraction",
        "confidence",
        "max_set_size",
        "smoothing",
        "seed",
        "seeds",
        "fractions",
        "format",
    }
)


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved knobs for one CLI run."""

    stopwords_path: str | None
    min_doc_freq: int
    support_count: int | None
    support_fraction: str | None
    confidence: str
    max_set_size: int | None
    smoothing: str
    seed: int
    seeds: tuple[int, ...]
    fractions: tuple[str, ...]
    format: str

    def stopword_set(self) -> frozenset[str]:
        return load_stopwords(self.stopwords_path)

    def mining_config(self) -> MiningConfig:
        if self.support_fraction is not None:
            support: int | str = self.support_fraction
        else:
            support = self.support_count if self.support_count is not None else 2
        return MiningConfig(
            min_support=support,
            min_confidence=self.confidence,
            max_itemset_size=self.max_set_size,
        )


def _load_config_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text("utf-8"))
    except FileNotFoundError:
        raise WordsetsError(f"config file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise WordsetsError(f"{path}: invalid JSON at byte offset {exc.pos}") from exc
    if not isinstance(raw, dict):
        raise WordsetsError(f"{path}: config must be a JSON object")
    unknown = sorted(set(raw) - CONFIG_KEYS)
    if unknown:
        raise WordsetsError(
            f"{path}: unknown config keys {', '.join(unknown)}; known keys are "
            + ", ".join(sorted(CONFIG_KEYS))
        )
    return raw


def _pick(flag, cfg: dict, key: str, default):
    """Flag beats config file beats default."""
    if flag is not None:
        return flag
    if key in cfg and cfg[key] is not None:
        return cfg[key]
    return default


def _parse_int_list(raw: object, what: str) -> tuple[int, ...]:
    if isinstance(raw, (list, tuple)):
        parts = [str(x) for x in raw]
    else:
        parts = str(raw).split(",")
    try:
        return tuple(int(p.strip()) for p in parts if p.strip())
    except ValueError:
        raise WordsetsError(f"bad {what}: {raw!r} (expected comma-separated integers)") from None


def _parse_str_list(raw: object) -> tuple[str, ...]:
    if isinstance(raw, (list, tuple)):
        return tuple(str(x) for x in raw)
    return tuple(p.strip() for p in str(raw).split(",") if p.strip())


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = _load_config_file(args.config) if getattr(args, "config", None) else {}

    stopwords = _pick(getattr(args, "stopwords", None), cfg, "stopwords", None)
    if stopwords is None:
        stopwords = os.environ.get(STOPWORDS_ENV) or None

    support_count = _pick(getattr(args, "support_count", None), cfg, "support_count", None)
    support_fraction = _pick(
        getattr(args, "support_fraction", None), cfg, "support_fraction", None
    )
    if support_count is not None and support_fraction is not None:
        raise WordsetsError("give either support-count or support-fraction, not both")

    min_doc_freq = int(_pick(getattr(args, "min_doc_freq", None), cfg, "min_doc_freq", 2))
    if min_doc_freq < 1:
        raise WordsetsError(f"min-doc-freq must be >= 1, got {min_doc_freq}")
    smoothing = str(_pick(getattr(args, "smoothing", None), cfg, "smoothing", "owner-row"))
    if smoothing not in SMOOTHING_MODES:
        raise WordsetsError(
            f"unknown smoothing mode {smoothing!r}; expected one of {', '.join(SMOOTHING_MODES)}"
        )
    fmt = str(_pick(getattr(args, "format", None), cfg, "format", "csv"))
    if fmt not in ("csv", "json"):
        raise WordsetsError(f"unknown format {fmt!r}; expected csv or json")

    seed_flag = getattr(args, "seed", None)
    seed = int(_pick(seed_flag, cfg, "seed", 0))
    if seed < 0:
        raise WordsetsError(f"seed must be >= 0, got {seed}")
    # seeds resolution: explicit --seeds > config seeds > single --seed > default trio
    seeds_raw = _pick(getattr(args, "seeds", None), cfg, "seeds", None)
    if seeds_raw is None:
        if seed_flag is not None or cfg.get("seed") is not None:
            seeds_raw = [seed]
        else:
            seeds_raw = DEFAULT_SEEDS
    fractions_raw = _pick(getattr(args, "fractions", None), cfg, "fractions", DEFAULT_FRACTIONS)

    max_set_size = _pick(getattr(args, "max_set_size", None), cfg, "max_set_size", None)
    return RunConfig(
        stopwords_path=str(stopwords) if stopwords is not None else None,
        min_doc_freq=min_doc_freq,
        support_count=int(support_count) if support_count is not None else None,
        support_fraction=str(support_fraction) if support_fraction is not None else None,
        confidence=str(_pick(getattr(args, "confidence", None), cfg, "confidence", "0.75")),
        max_set_size=int(max_set_size) if max_set_size is not None else None,
        smoothing=smoothing,
        seed=seed,
        seeds=_parse_int_list(seeds_raw, "seeds"),
        fractions=_parse_str_list(fractions_raw),
        format=fmt,
    )


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_train(args: argparse.Namespace) -> int:
    run = resolve_config(args)
    corpus = load_corpus(args.corpus)
    stopwords = run.stopword_set()
    if args.dump_transactions:
        transactions = build_transactions(corpus, stopwords, run.min_doc_freq)
        Path(args.dump_transactions).write_text(
            format_transactions(transactions), encoding="utf-8"
        )
    table = train_table(
        corpus,
        stopwords=stopwords,
        config=run.mining_config(),
        min_doc_freq=run.min_doc_freq,
        mode=run.smoothing,
    )
    save_table(table, args.out)
    sys.stderr.write(
        f"trained on {len(corpus)} documents: {len(table.entries)} sets, "
        f"{len(table.classes)} classes -> {args.out}\n"
    )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    run = resolve_config(args)
    table = load_table(args.model)
    stopwords = run.stopword_set()

    results = []
    for name in args.inputs:
        text = Path(name).read_text("utf-8")
        results.append(
            (name, classify_text(table, text, stopwords=stopwords, min_doc_freq=run.min_doc_freq))
        )

    if run.format == "json":
        payload = [
            {
                "file": name,
                "winner": r.winner,
                "tie": r.tie,
                "tied_classes": list(r.tied_classes),
                "low_evidence": r.low_evidence,
                "totals": {
                    b.class_name: format_decimal(b.total) for b in r.breakdowns
                },
                "breakdowns": [
                    {
                        "class": b.class_name,
                        "pval": b.owned_sets,
                        "nval": b.other_sets,
                        "p": b.matched_owned,
                        "n": b.unmatched_other,
                        "positive_pct": format_decimal(b.positive_pct),
                        "negative_pct": format_decimal(b.negative_pct),
                        "prior": format_decimal(b.prior),
                        "total": format_decimal(b.total),
                    }
                    for b in r.breakdowns
                ],
                "matched_sets": [" ".join(s) for s in r.matched_sets],
            }
            for name, r in results
        ]
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
        return 0

    blocks = []
    if args.explain:
        for name, r in results:
            lines = ["file,winner,tie,low_evidence"]
            lines.append(f"{name},{r.winner},{str(r.tie).lower()},{str(r.low_evidence).lower()}")
            lines.append("")
            lines.append(format_breakdowns(r.breakdowns).rstrip("\n"))
            lines.append("")
            lines.append("matched_sets")
            lines.extend(" ".join(s) for s in r.matched_sets)
            blocks.append("\n".join(lines).rstrip("\n"))
        _emit("\n\n".join(blocks) + "\n", args.out)
    else:
        lines = ["file,winner"]
        lines.extend(f"{name},{r.winner}" for name, r in results)
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _read_id_list(path: str) -> list[str]:
    lines = Path(path).read_text("utf-8").splitlines()
    return [ln.strip() for ln in lines if ln.strip()]


def _cmd_evaluate(args: argparse.Namespace) -> int:
    run = resolve_config(args)
    table = load_table(args.model)
    corpus = load_corpus(args.corpus)
    report = evaluate(
        table,
        corpus,
        stopwords=run.stopword_set(),
        min_doc_freq=run.min_doc_freq,
        train_ids=_read_id_list(args.train_ids) if args.train_ids else None,
    )
    text = format_report_json(report) if run.format == "json" else format_report_csv(report)
    _emit(text, args.out)
    return 0


def _cmd_curve(args: argparse.Namespace) -> int:
    run = resolve_config(args)
    corpus = load_corpus(args.corpus)
    curve = learning_curve(
        corpus,
        fractions=run.fractions,
        seeds=run.seeds if run.seeds else (run.seed,),
        stopwords=run.stopword_set(),
        config=run.mining_config(),
        min_doc_freq=run.min_doc_freq,
        mode=run.smoothing,
    )
    text = format_curve_json(curve) if run.format == "json" else format_curve_csv(curve)
    _emit(text, args.out)
    return 0


def _cmd_inspect(args: argparse.Namespace) -> int:
    table = load_table(args.model)
    lines = [
        f"mode,{table.mode}",
        f"total_sets,{table.total_sets}",
        f"entries,{len(table.entries)}",
        "",
        "class,owned_sets,prior",
    ]
    for s in table.class_stats:
        lines.append(f"{s.class_name},{s.set_count},{format_decimal(s.prior, 6)}")
    lines.append("")
    header = ["items", "owner"]
    header += [f"count:{c}" for c in table.classes]
    header += [f"prob:{c}" for c in table.classes]
    lines.append(",".join(header))
    for e in table.entries:
        row = [" ".join(e.itemset.items), e.owner]
        row += [str(e.itemset.class_counts.get(c, 0)) for c in table.classes]
        row += [format_decimal(e.probs[c], 6) for c in table.classes]
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON file with option defaults; flags win")
    parser.add_argument("--stopwords", help=f"stopword file (or ${STOPWORDS_ENV})")
    parser.add_argument("--min-doc-freq", type=int, dest="min_doc_freq")


def _add_mining(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--support-count", type=int, dest="support_count",
                        help="absolute mining support (default 2)")
    parser.add_argument("--support-fraction", dest="support_fraction",
                        help="fractional mining support in (0, 1]")
    parser.add_argument("--confidence", help="rule confidence; recorded, inert (default 0.75)")
    parser.add_argument("--max-set-size", type=int, dest="max_set_size")
    parser.add_argument("--smoothing", choices=list(SMOOTHING_MODES))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wordsets",
        description="Train and run a frequent-word-set text classifier.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="mine a corpus and write a model file")
    p.add_argument("--corpus", required=True, help="corpus directory or CSV file")
    p.add_argument("--out", required=True, help="model file to write")
    p.add_argument("--dump-transactions", help="also write per-document keyword transactions")
    _add_common(p)
    _add_mining(p)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("classify", help="classify text files against a model")
    p.add_argument("--model", required=True)
    p.add_argument("--in", dest="inputs", required=True, nargs="+", metavar="FILE")
    p.add_argument("--explain", action="store_true", help="emit per-class breakdowns")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out", help="write output here instead of stdout")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("evaluate", help="measure accuracy on a labeled corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--train-ids", dest="train_ids",
                   help="file of training document ids, one per line, for leakage checking")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    _add_common(p)
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("curve", help="accuracy as a function of training fraction")
    p.add_argument("--corpus", required=True)
    p.add_argument("--fractions", help=f"comma-separated fractions (default {DEFAULT_FRACTIONS})")
    p.add_argument("--seeds", help=f"comma-separated split seeds (default {DEFAULT_SEEDS})")
    p.add_argument("--seed", type=int, help="single seed, used when --seeds is not given")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--out")
    _add_common(p)
    _add_mining(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("inspect", help="print a model file as a readable table")
    p.add_argument("--model", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WordsetsError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
