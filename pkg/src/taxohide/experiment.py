"""Mine, pick sensitive itemsets, sanitize, re-mine, evaluate."""

from __future__ import annotations

import csv
import io
import logging
import time

from sklearn.utils import check_random_state

from .database import itemset_utility
from .metrics import METRICS, evaluate
from .miner import mine_clhuis
from .sanitizer import sanitize
from .validation import check_strategy

logger = logging.getLogger(__name__)

CSV_COLUMNS = (
    "dataset", "strategy", "minutil", "n_sensitive", "seed", "n_clhuis", "n_clhuis_after",
    *METRICS, "n_modified_transactions", "n_edits", "runtime_ms", "error",
)
RUNTIME_COLUMNS = ("runtime_ms",)


def select_sensitive(clhuis, k: int, seed) -> list[tuple[int, ...]]:
    """Draw ``k`` itemsets uniformly without replacement.

    Candidates are sorted by their id sequence first, so the draw does not
    depend on the order the miner produced them in. The result is returned in
    that same canonical order.
    """
    pool = sorted(tuple(sorted(p)) for p in clhuis)
    if k < 0 or k > len(pool):
        raise ValueError(f"cannot pick {k} sensitive itemsets out of {len(pool)}")
    rng = check_random_state(seed)
    picked = rng.choice(len(pool), size=k, replace=False)
    return [pool[i] for i in sorted(int(i) for i in picked)]


def run_once(database, minutil: int, sensitive, strategy: str, clhuis=None, check=False):
    """One full run; returns a dict with the sanitized database, log and report."""
    if clhuis is None:
        clhuis = mine_clhuis(database, minutil).itemsets
    start = time.perf_counter()
    sanitized, log, dic, tasks = sanitize(database, minutil, sensitive, clhuis, strategy, check)
    runtime_ms = (time.perf_counter() - start) * 1000.0
    after = mine_clhuis(sanitized, minutil).itemsets
    report = evaluate(database, sanitized, sensitive, clhuis, after, log)
    tax = database.taxonomy
    report.residual_utilities = {
        " ".join(tax.names[i] for i in s): itemset_utility(s, sanitized)
        for s in sensitive
    }
    return {
        "sanitized": sanitized,
        "edit_log": log,
        "gidic": dic,
        "tasks": tasks,
        "clhuis": clhuis,
        "clhuis_after": after,
        "report": report,
        "runtime_ms": runtime_ms,
    }


def report_document(result, *, minutil, strategy, seed=None) -> dict:
    report = result["report"]
    doc = report.as_dict()
    doc["runtime_ms"] = round(result["runtime_ms"], 3)
    doc["minutil"] = minutil
    doc["strategy"] = strategy
    doc["sensitive_seed"] = seed
    doc["sensitive_size"] = report.counts["n_sensitive"]
    doc["residual_utilities"] = report.residual_utilities
    return doc


def run_sweep(database, minutils, strategies, sensitive_counts=(), seeds=(None,),
              sensitive=None, dataset: str = "dataset") -> list[dict]:
    """Rows for every (minutil, k, seed, strategy) combination, in that order.

    With ``sensitive`` given, the same fixed itemsets are used at every
    threshold and ``sensitive_counts``/``seeds`` are ignored. A failing run
    becomes a row with an ``error`` message.
    """
    strategies = [check_strategy(s) for s in strategies]
    if not minutils or not strategies:
        raise ValueError("sweep lists must be nonempty")
    rows = []
    for minutil in minutils:
        try:
            clhuis = mine_clhuis(database, minutil).itemsets
        except Exception as exc:  # noqa: BLE001 - recorded in the row
            clhuis, mine_error = None, f"{type(exc).__name__}: {exc}"
        else:
            mine_error = None
        if sensitive is not None:
            points = [(len(sensitive), None)]
        else:
            points = [(k, s) for k in sensitive_counts for s in seeds]
        for k, seed in points:
            for strategy in strategies:
                row = dict.fromkeys(CSV_COLUMNS, "")
                row.update(dataset=dataset, strategy=strategy, minutil=minutil,
                           n_sensitive=k, seed="" if seed is None else seed)
                try:
                    if mine_error:
                        raise RuntimeError(mine_error)
                    sens = sensitive if sensitive is not None else select_sensitive(clhuis, k, seed)
                    result = run_once(database, minutil, sens, strategy, clhuis)
                    rep = result["report"]
                    row.update({m: f"{float(getattr(rep, m)):.6f}" for m in METRICS})
                    row.update(
                        n_clhuis=rep.counts["n_clhuis"],
                        n_clhuis_after=rep.counts["n_clhuis_after"],
                        n_modified_transactions=rep.counts["n_modified_transactions"],
                        n_edits=rep.counts["n_edits"],
                        runtime_ms=f"{result['runtime_ms']:.3f}",
                    )
                except Exception as exc:  # noqa: BLE001 - sweep keeps going
                    logger.warning("run failed: %s", exc)
                    row["error"] = f"{type(exc).__name__}: {exc}"
                rows.append(row)
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()
