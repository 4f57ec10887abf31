"""Mining and hiding of cross-level high-utility itemsets over item taxonomies."""

from .database import (
    ItemsetError,
    QuantitativeDatabase,
    Transaction,
    gen_item_utility,
    itemset_contains,
    itemset_utility,
    make_itemset,
    transaction_utility,
)
from .gidic import GIDic, build_gidic, sensitive_transactions, st_ordering
from .metrics import SanitizationReport, evaluate
from .miner import CLHUIMiner, MiningResult, gwu, mine_clhuis
from .sanitizer import EditLog, Sanitizer, sanitize, select_victim
from .taxonomy import Taxonomy, TaxonomyError

__version__ = "0.1.0"

__all__ = [
    "CLHUIMiner",
    "EditLog",
    "GIDic",
    "ItemsetError",
    "MiningResult",
    "QuantitativeDatabase",
    "SanitizationReport",
    "Sanitizer",
    "Taxonomy",
    "TaxonomyError",
    "Transaction",
    "build_gidic",
    "evaluate",
    "gen_item_utility",
    "gwu",
    "itemset_contains",
    "itemset_utility",
    "make_itemset",
    "mine_clhuis",
    "sanitize",
    "select_victim",
    "sensitive_transactions",
    "st_ordering",
    "transaction_utility",
]
