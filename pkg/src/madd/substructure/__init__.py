"""SMARTS parsing, subgraph matching, and structural-alert catalogs."""

from .catalog import (
    CATALOG_NAMES,
    FilterCatalog,
    apply_catalog,
    get_catalog,
    load_bundled_catalog,
    load_catalog_file,
)
from .matcher import MatchContext, find_matches, has_match, match, match_at
from .smarts import SmartsPattern, parse_smarts

__all__ = [
    "CATALOG_NAMES",
    "FilterCatalog",
    "MatchContext",
    "SmartsPattern",
    "apply_catalog",
    "find_matches",
    "get_catalog",
    "has_match",
    "load_bundled_catalog",
    "load_catalog_file",
    "match",
    "match_at",
    "parse_smarts",
]
