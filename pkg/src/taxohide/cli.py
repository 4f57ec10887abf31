"""Command line interface: ``taxohide mine|sanitize|evaluate|experiment``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import io as tio
from .database import itemset_utility
from .experiment import report_document, rows_to_csv, run_once, run_sweep, select_sensitive
from .metrics import evaluate
from .miner import mine_clhuis
from .validation import STRATEGIES

log = logging.getLogger("taxohide")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _strategies(name: str) -> list[str]:
    return list(STRATEGIES) if name == "all" else [name]


def _dataset_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--transactions", required=True, help="transaction file")
    p.add_argument("--taxonomy", help="child,parent file")
    p.add_argument("--profits", help="item,profit file (quantity format)")
    p.add_argument("--format", dest="fmt", choices=tio.FORMATS, default="utility")
    p.add_argument("-v", "--verbose", action="store_true")


def _sensitive_args(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    g = p.add_mutually_exclusive_group(required=not sweep)
    g.add_argument("--sensitive-file", help="itemsets to hide, one per line")
    if sweep:
        g.add_argument("--sensitive-random", type=_int_list, metavar="K[,K...]",
                       help="number(s) of randomly drawn sensitive itemsets")
        p.add_argument("--seed", type=_int_list, default=[0], metavar="S[,S...]")
    else:
        g.add_argument("--sensitive-random", type=int, metavar="K",
                       help="draw K sensitive itemsets at random")
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strategy", choices=(*STRATEGIES, "all"), default="min-rf")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taxohide",
        description="Mine and hide cross-level high-utility itemsets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mine", help="mine high-utility itemsets")
    _dataset_args(p)
    p.add_argument("--minutil", type=int, required=True)
    p.add_argument("--out", help="output directory (writes clhuis.txt)")

    p = sub.add_parser("sanitize", help="hide sensitive itemsets")
    _dataset_args(p)
    p.add_argument("--minutil", type=int, required=True)
    _sensitive_args(p)
    p.add_argument("--out", required=True, help="output directory")

    p = sub.add_parser("evaluate", help="side effects of an existing sanitized file")
    _dataset_args(p)
    p.add_argument("--minutil", type=int, required=True)
    p.add_argument("--sensitive-file", required=True)
    p.add_argument("--sanitized", required=True, help="sanitized transaction file")
    p.add_argument("--edits", required=True, help="edit log written by 'sanitize'")
    p.add_argument("--out", help="output directory (writes report.json)")

    p = sub.add_parser("experiment", help="sweep thresholds, sensitive sets and strategies")
    _dataset_args(p)
    p.add_argument("--minutil", type=_int_list, required=True, metavar="M[,M...]")
    _sensitive_args(p, sweep=True)
    p.add_argument("--name", help="dataset label for the CSV (default: file stem)")
    p.add_argument("--out", required=True, help="output directory (writes results.csv)")
    return parser


def _load(args):
    bundle = tio.load_dataset(args.transactions, args.taxonomy, args.profits, args.fmt)
    return bundle.database


def _read_sensitive(path, taxonomy):
    text = Path(path).read_text()
    try:
        return [p for p, _ in tio.parse_itemsets(text, taxonomy)]
    except tio.ParseError as exc:
        raise exc.located(path) from None


def cmd_mine(args) -> int:
    db = _load(args)
    start = time.perf_counter()
    result = mine_clhuis(db, args.minutil)
    elapsed = (time.perf_counter() - start) * 1000
    text = tio.write_itemsets(result.itemsets, db.taxonomy)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "clhuis.txt").write_text(text)
    else:
        sys.stdout.write(text)
    print(f"{len(result)} itemsets at minutil={args.minutil} in {elapsed:.1f} ms", file=sys.stderr)
    return 0


def cmd_sanitize(args) -> int:
    db = _load(args)
    tax = db.taxonomy
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    clhuis = mine_clhuis(db, args.minutil).itemsets
    if args.sensitive_file:
        sensitive = _read_sensitive(args.sensitive_file, tax)
        seed = None
    else:
        sensitive = select_sensitive(clhuis, args.sensitive_random, args.seed)
        seed = args.seed
    (out / "clhuis.txt").write_text(tio.write_itemsets(clhuis, tax))
    (out / "sensitive.txt").write_text(
        tio.write_itemsets({s: clhuis.get(s, itemset_utility(s, db)) for s in sensitive}, tax)
    )
    for strategy in _strategies(args.strategy):
        result = run_once(db, args.minutil, sensitive, strategy, clhuis)
        (out / f"sanitized_{strategy}.txt").write_text(
            tio.write_sanitized(result["sanitized"], args.fmt)
        )
        (out / f"edits_{strategy}.txt").write_text(tio.write_edit_log(result["edit_log"], tax))
        (out / f"gidic_{strategy}.txt").write_text(result["gidic"].dump(tax))
        doc = report_document(result, minutil=args.minutil, strategy=strategy, seed=seed)
        tio.write_report(doc, out / f"report_{strategy}.json")
        print(
            f"{strategy}: hf={doc['hf']:.4f} mc={doc['mc']:.4f} ac={doc['ac']:.4f} "
            f"ius={doc['ius']:.4f} dus={doc['dus']:.4f} tmr={doc['tmr']:.4f} "
            f"runtime={doc['runtime_ms']:.1f} ms"
        )
    return 0


def cmd_evaluate(args) -> int:
    db = _load(args)
    tax = db.taxonomy
    prof = tio.parse_profits(Path(args.profits).read_text()) if args.profits else None
    sanitized = tio.parse_transactions(Path(args.sanitized).read_text(), args.fmt, tax, prof)
    if sanitized.taxonomy != tax:
        raise tio.ParseError("sanitized file contains items not in the original database",
                             source=args.sanitized)
    edits = tio.parse_edit_log(Path(args.edits).read_text(), tax)
    sensitive = _read_sensitive(args.sensitive_file, tax)
    clhuis = mine_clhuis(db, args.minutil).itemsets
    after = mine_clhuis(sanitized, args.minutil).itemsets
    report = evaluate(db, sanitized, sensitive, clhuis, after, edits)
    doc = report.as_dict()
    doc["minutil"] = args.minutil
    doc["sensitive_size"] = len(sensitive)
    doc["residual_utilities"] = {
        " ".join(tax.names[i] for i in s): itemset_utility(s, sanitized) for s in sensitive
    }
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        tio.write_report(doc, Path(args.out) / "report.json")
    print(json.dumps(doc, indent=2))
    return 0


def cmd_experiment(args) -> int:
    db = _load(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    name = args.name or Path(args.transactions).stem
    sensitive = _read_sensitive(args.sensitive_file, db.taxonomy) if args.sensitive_file else None
    rows = run_sweep(
        db,
        args.minutil,
        _strategies(args.strategy),
        sensitive_counts=args.sensitive_random or (),
        seeds=args.seed,
        sensitive=sensitive,
        dataset=name,
    )
    (out / "results.csv").write_text(rows_to_csv(rows))
    n_err = sum(1 for r in rows if r["error"])
    print(f"{len(rows)} rows written to {out / 'results.csv'} ({n_err} failed)")
    return 0


COMMANDS = {
    "mine": cmd_mine,
    "sanitize": cmd_sanitize,
    "evaluate": cmd_evaluate,
    "experiment": cmd_experiment,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (ValueError, OSError, ZeroDivisionError) as exc:
        print(f"taxohide: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
