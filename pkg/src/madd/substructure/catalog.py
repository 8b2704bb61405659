"""Structural-alert catalogs (Brenk, Glaxo, PAINS, SureChEMBL).

Catalogs are TSV files with columns ``name<TAB>smarts``.  Entries using
SMARTS features outside the supported subset are skipped at load time
with a warning and counted in the catalog's diagnostics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import CatalogNotLoadedError, ParseError, UnsupportedFeatureError
from ..molcore.graph import Molecule
from .matcher import has_match
from .smarts import SmartsPattern, parse_smarts

log = logging.getLogger(__name__)

CATALOG_NAMES = ("Brenk", "Glaxo", "PAINS", "SureChEMBL")

_BUNDLED = {
    "Brenk": "brenk.tsv",
    "Glaxo": "glaxo.tsv",
    "PAINS": "pains.tsv",
    "SureChEMBL": "surechembl.tsv",
}


@dataclass
class FilterCatalog:
    name: str
    patterns: list[tuple[str, SmartsPattern]] = field(default_factory=list)
    version: str = "bundled-1"
    skipped: list[tuple[str, str]] = field(default_factory=list)  # (name, reason)

    @property
    def n_patterns(self) -> int:
        return len(self.patterns)


def load_catalog_file(path: str | Path, name: str, version: str = "") -> FilterCatalog:
    path = Path(path)
    catalog = FilterCatalog(name=name, version=version or path.stem)
    seen: set[str] = set()
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            alert_name, smarts = line.split("\t", 1)
        except ValueError:
            log.warning("%s:%d: expected name<TAB>smarts, skipping", path, line_no)
            continue
        alert_name = alert_name.strip()
        if alert_name in seen:
            log.warning("%s:%d: duplicate alert name %r, skipping", path, line_no, alert_name)
            continue
        try:
            pattern = parse_smarts(smarts.strip())
        except UnsupportedFeatureError as exc:
            catalog.skipped.append((alert_name, str(exc)))
            log.warning("%s:%d: %s (skipped)", path, line_no, exc)
            continue
        except ParseError as exc:
            catalog.skipped.append((alert_name, str(exc)))
            log.warning("%s:%d: bad SMARTS: %s (skipped)", path, line_no, exc)
            continue
        seen.add(alert_name)
        catalog.patterns.append((alert_name, pattern))
    return catalog


def load_bundled_catalog(name: str) -> FilterCatalog:
    """Load one of the shipped catalogs by display name."""
    if name not in _BUNDLED:
        raise CatalogNotLoadedError(
            f"unknown catalog {name!r}; expected one of {CATALOG_NAMES}"
        )
    ref = resources.files("madd.data.catalogs") / _BUNDLED[name]
    with resources.as_file(ref) as path:
        return load_catalog_file(path, name)


_cache: dict[str, FilterCatalog] = {}


def get_catalog(name: str) -> FilterCatalog:
    if name not in _cache:
        _cache[name] = load_bundled_catalog(name)
    return _cache[name]


def apply_catalog(mol: Molecule, catalog: FilterCatalog) -> int:
    """Number of catalog alerts with at least one match (0 = pass)."""
    if not catalog.patterns:
        raise CatalogNotLoadedError(f"catalog {catalog.name!r} has no patterns")
    return sum(1 for _, pattern in catalog.patterns if has_match(mol, pattern))
