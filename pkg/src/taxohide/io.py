"""Readers and writers for SPMF-style text files.

Transactions come in two flavours:

``utility``
    ``i1 i2 ... ik:TU:u1 u2 ... uk``; every unit profit is 1 and the listed
    utility becomes the quantity.
``quantity``
    ``i1 i2 ... ik:q1 q2 ... qk``, with unit profits from a separate
    ``item,profit`` file.

Taxonomies are ``child,parent`` lines and itemset files are
``i1 i2 ... ik #UTIL: u`` lines. Blank lines and lines starting with ``#``,
``%`` or ``@`` are skipped everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .database import Itemset, QuantitativeDatabase, make_itemset
from .taxonomy import Taxonomy, TaxonomyError

FORMATS = ("utility", "quantity")


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if lineno is not None:
            where += f"{lineno}: "
        elif where:
            where += " "
        super().__init__(where + message)
        self.message = message
        self.lineno = lineno
        self.source = source

    def located(self, source) -> "ParseError":
        """Same error, attributed to ``source``."""
        return ParseError(self.message, self.lineno, str(source))


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%@":
            continue
        yield lineno, line


def _int(token: str, lineno: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", lineno) from None


def parse_taxonomy(text: str, items=()) -> Taxonomy:
    """Parse ``child,parent`` lines; ``items`` adds extra top-level leaves."""
    edges = []
    for lineno, line in _lines(text):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise ParseError("expected 'child,parent'", lineno)
        edges.append((parts[0], parts[1]))
    try:
        return Taxonomy.from_edges(edges, items=items)
    except TaxonomyError as exc:
        raise ParseError(str(exc)) from None


def parse_profits(text: str) -> dict[str, int]:
    profits: dict[str, int] = {}
    for lineno, line in _lines(text):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ParseError("expected 'item,profit'", lineno)
        name, value = parts[0], _int(parts[1], lineno, "profit")
        if value <= 0:
            raise ParseError(f"profit of {name!r} must be positive", lineno)
        if name in profits:
            raise ParseError(f"duplicate profit for {name!r}", lineno)
        profits[name] = value
    return profits


def _parse_rows(text: str, fmt: str):
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    rows = []
    for lineno, line in _lines(text):
        parts = line.split(":")
        if fmt == "utility":
            if len(parts) != 3:
                raise ParseError("expected 'items:TU:utilities'", lineno)
            names, declared, values = parts[0].split(), parts[1].strip(), parts[2].split()
        else:
            if len(parts) != 2:
                raise ParseError("expected 'items:quantities'", lineno)
            names, declared, values = parts[0].split(), None, parts[1].split()
        if len(names) != len(values):
            raise ParseError(f"{len(names)} items but {len(values)} values", lineno)
        if len(set(names)) != len(names):
            dup = next(n for n in names if names.count(n) > 1)
            raise ParseError(f"duplicate item {dup!r}", lineno)
        qty = [_int(v, lineno, "value") for v in values]
        for name, q in zip(names, qty):
            if q <= 0:
                raise ParseError(f"value of {name!r} must be positive", lineno)
        if declared is not None and _int(declared, lineno, "TU") != sum(qty):
            raise ParseError(f"declared TU {declared} but utilities sum to {sum(qty)}", lineno)
        rows.append((lineno, dict(zip(names, qty))))
    return rows


def parse_transactions(text: str, fmt: str = "utility", taxonomy: Taxonomy | None = None,
                       profits: dict[str, int] | None = None) -> QuantitativeDatabase:
    """Parse a transaction file into a database.

    Transactions are numbered 1, 2, ... in file order. Items missing from
    ``taxonomy`` are added as top-level leaves; ``profits`` (name -> unit
    profit) is required for the quantity format and ignored otherwise.
    """
    rows = _parse_rows(text, fmt)
    names = (n for _, row in rows for n in row)
    tax = (taxonomy or Taxonomy([], [])).extended(names)
    seen = {n for _, row in rows for n in row}
    for name in seen:
        if not tax.is_leaf(tax.ids[name]):
            lineno = next(ln for ln, row in rows if name in row)
            raise ParseError(f"{name!r} is a generalized item and cannot appear in a transaction", lineno)
    if fmt == "utility":
        unit = {tax.ids[n]: 1 for n in seen}
    else:
        if profits is None:
            raise ParseError("quantity format needs a profit table")
        missing = sorted(seen - profits.keys())
        if missing:
            raise ParseError(f"no profit for item(s) {', '.join(missing[:5])}")
        unit = {tax.ids[n]: p for n, p in profits.items() if n in tax.ids and tax.is_leaf(tax.ids[n])}
    txs = [
        (tid, {tax.ids[n]: q for n, q in row.items()})
        for tid, (_, row) in enumerate(rows, start=1)
    ]
    return QuantitativeDatabase(txs, unit, tax)


def write_transactions(database: QuantitativeDatabase, fmt: str = "utility") -> str:
    """Serialize ``database``; empty transactions are left out."""
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    names = database.taxonomy.names
    out = []
    for t in database:
        if not t.entries:
            continue
        items = " ".join(names[i] for i in t.entries)
        if fmt == "utility":
            utils = " ".join(str(t.utility(i)) for i in t.entries)
            out.append(f"{items}:{t.tu}:{utils}")
        else:
            out.append(f"{items}:{' '.join(str(q) for q in t.entries.values())}")
    return "\n".join(out) + ("\n" if out else "")


write_sanitized = write_transactions


def write_taxonomy(taxonomy: Taxonomy) -> str:
    return "".join(f"{c},{p}\n" for c, p in taxonomy.edges())


def write_profits(database: QuantitativeDatabase) -> str:
    names = database.taxonomy.names
    return "".join(f"{names[i]},{p}\n" for i, p in sorted(database.profits.items()))


def parse_itemsets(text: str, taxonomy: Taxonomy) -> list[tuple[Itemset, int | None]]:
    """Parse ``i1 ... ik #UTIL: u`` lines; the utility part is optional."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "%@":
            continue
        body, sep, tail = line.partition("#UTIL:")
        if not sep and line.startswith("#"):
            continue
        utility = _int(tail.strip(), lineno, "utility") if sep else None
        names = body.split()
        if not names:
            raise ParseError("empty itemset", lineno)
        try:
            ids = [taxonomy.id_of(n) for n in names]
            out.append((make_itemset(ids, taxonomy), utility))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
    return out


def write_itemsets(itemsets: dict, taxonomy: Taxonomy) -> str:
    names = taxonomy.names
    return "".join(
        f"{' '.join(names[i] for i in p)} #UTIL: {u}\n" for p, u in sorted(itemsets.items())
    )


def write_edit_log(log, taxonomy: Taxonomy) -> str:
    """One edit per line: ``tid item kind delta``."""
    return "".join(f"{e.tid} {taxonomy.names[e.item]} {e.kind} {e.delta}\n" for e in log)


def parse_edit_log(text: str, taxonomy: Taxonomy):
    from .sanitizer import Edit, EditLog

    log = EditLog()
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 4 or parts[2] not in ("delete", "reduce"):
            raise ParseError("expected 'tid item delete|reduce delta'", lineno)
        try:
            item = taxonomy.id_of(parts[1])
        except TaxonomyError as exc:
            raise ParseError(str(exc), lineno) from None
        log.edits.append(Edit(_int(parts[0], lineno, "tid"), item, parts[2],
                              _int(parts[3], lineno, "delta")))
    return log


@dataclass
class DatasetBundle:
    database: QuantitativeDatabase
    fmt: str

    @property
    def taxonomy(self) -> Taxonomy:
        return self.database.taxonomy

    @property
    def name_map(self) -> dict[str, int]:
        return self.database.taxonomy.ids


def _read(path, what):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {what}: {exc}") from None


def load_dataset(transactions, taxonomy=None, profits=None, fmt: str = "utility") -> DatasetBundle:
    """Load files from disk into a :class:`DatasetBundle`."""
    try:
        tax = parse_taxonomy(_read(taxonomy, "taxonomy")) if taxonomy else None
    except ParseError as exc:
        raise exc.located(taxonomy) from None
    try:
        prof = parse_profits(_read(profits, "profits")) if profits else None
    except ParseError as exc:
        raise exc.located(profits) from None
    try:
        db = parse_transactions(_read(transactions, "transactions"), fmt, tax, prof)
    except ParseError as exc:
        raise exc.located(transactions) from None
    return DatasetBundle(db, fmt)


def write_report(report: dict, path) -> None:
    Path(path).write_text(json.dumps(report, indent=2, sort_keys=False) + "\n")
