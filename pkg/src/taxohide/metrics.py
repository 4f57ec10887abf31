"""Side effects of a sanitization run.

All ratios are exact :class:`fractions.Fraction` values; they are turned into
floats only when a report is rendered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class UndefinedMetricError(ZeroDivisionError):
    """Raised when a similarity metric has an empty denominator."""


def _keys(itemsets) -> set:
    return {tuple(sorted(p)) for p in itemsets}


def hiding_failure(sensitive, mined_after) -> Fraction:
    """Share of sensitive itemsets still mined after sanitization (0 if none)."""
    s = _keys(sensitive)
    if not s:
        return Fraction(0)
    return Fraction(len(s & _keys(mined_after)), len(s))


def missing_cost(non_sensitive, mined_after) -> Fraction:
    """Share of non-sensitive itemsets lost by sanitization (0 if none)."""
    ns = _keys(non_sensitive)
    if not ns:
        return Fraction(0)
    return Fraction(len(ns - _keys(mined_after)), len(ns))


def artificial_cost(mined_before, mined_after) -> Fraction:
    """Share of post-sanitization itemsets that were not mined before (0 if none)."""
    after = _keys(mined_after)
    if not after:
        return Fraction(0)
    return Fraction(len(after - _keys(mined_before)), len(after))


def itemset_utility_similarity(before: dict, after: dict) -> Fraction:
    den = sum(before.values())
    if den == 0:
        raise UndefinedMetricError("no high-utility itemsets in the original database")
    return Fraction(sum(after.values()), den)


def database_utility_similarity(database, sanitized) -> Fraction:
    den = database.total_utility
    if den == 0:
        raise UndefinedMetricError("original database has zero utility")
    return Fraction(sanitized.total_utility, den)


def transaction_modification_ratio(modified_tids, n_transactions: int) -> Fraction:
    if n_transactions == 0:
        raise UndefinedMetricError("original database is empty")
    return Fraction(len(set(modified_tids)), n_transactions)


def similarity_metrics(clhuis: dict, clhuis_after: dict, database, sanitized, edit_log):
    """``(ius, dus, tmr)`` for one run."""
    return (
        itemset_utility_similarity(clhuis, clhuis_after),
        database_utility_similarity(database, sanitized),
        transaction_modification_ratio(edit_log.modified_tids, len(database)),
    )


METRICS = ("hf", "mc", "ac", "ius", "dus", "tmr")


@dataclass
class SanitizationReport:
    hf: Fraction
    mc: Fraction
    ac: Fraction
    ius: Fraction
    dus: Fraction
    tmr: Fraction
    counts: dict = field(default_factory=dict)
    residual_utilities: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {m: float(getattr(self, m)) for m in METRICS}
        out["exact"] = {m: str(getattr(self, m)) for m in METRICS}
        out["counts"] = dict(self.counts)
        return out


def evaluate(database, sanitized, sensitive, clhuis: dict, clhuis_after: dict,
             edit_log) -> SanitizationReport:
    """Compute all six side-effect metrics.

    ``clhuis`` and ``clhuis_after`` map itemsets to their utilities in the
    original and sanitized database, mined at the same threshold.
    """
    sens = _keys(sensitive)
    non_sensitive = [p for p in clhuis if tuple(sorted(p)) not in sens]
    after = _keys(clhuis_after)
    before = _keys(clhuis)
    ius, dus, tmr = similarity_metrics(clhuis, clhuis_after, database, sanitized, edit_log)
    counts = {
        "n_sensitive": len(sens),
        "n_sensitive_unhidden": len(sens & after),
        "n_non_sensitive": len(non_sensitive),
        "n_non_sensitive_lost": len(_keys(non_sensitive) - after),
        "n_clhuis": len(before),
        "n_clhuis_after": len(after),
        "n_artificial": len(after - before),
        "utility_clhuis": sum(clhuis.values()),
        "utility_clhuis_after": sum(clhuis_after.values()),
        "database_utility": database.total_utility,
        "database_utility_after": sanitized.total_utility,
        "n_transactions": len(database),
        "n_modified_transactions": len(edit_log.modified_tids),
        "n_edits": len(edit_log),
    }
    return SanitizationReport(
        hf=hiding_failure(sens, after),
        mc=missing_cost(non_sensitive, after),
        ac=artificial_cost(before, after),
        ius=ius,
        dus=dus,
        tmr=tmr,
        counts=counts,
    )
