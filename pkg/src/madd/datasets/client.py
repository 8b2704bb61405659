"""Bioactivity fetch clients (ChEMBL, BindingDB) with a filesystem cache.

Raw pages are cached keyed by (source, target, measure); re-running a
fetch with a warm cache touches no network and produces identical
output, so tests run entirely from fixtures.
"""

from __future__ import annotations

import csv
import json
import logging
import os
import time
from dataclasses import dataclass
from pathlib import Path

import requests

from ..errors import HttpFetchError, RateLimitedError, TargetNotFoundError

log = logging.getLogger(__name__)

MEASURES = ("Ki", "Kd", "IC50")

# unit -> factor to nM; unparseable units become missing values
UNIT_TO_NM = {
    "nM": 1.0,
    "nm": 1.0,
    "uM": 1e3,
    "um": 1e3,
    "µM": 1e3,
    "mM": 1e6,
    "pM": 1e-3,
    "M": 1e9,
}


@dataclass(frozen=True)
class AffinityRecord:
    smiles: str
    target: str
    measure: str  # Ki | Kd | IC50
    value: float | None  # nM; None = missing
    source: str  # chembl | bindingdb

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"measure must be one of {MEASURES}")
        if self.value is not None and self.value <= 0:
            raise ValueError("affinity value must be positive when present")


def normalize_to_nm(value, units) -> float | None:
    if value is None or value == "":
        return None
    try:
        number = float(value)
    except (TypeError, ValueError):
        return None
    factor = UNIT_TO_NM.get(str(units).strip())
    if factor is None:
        return None
    result = number * factor
    return result if result > 0 else None


def default_cache_dir() -> Path:
    return Path(os.environ.get("MADD_CACHE_DIR", "MADD/cache"))


class _CachedClient:
    source = ""

    def __init__(
        self,
        base_url: str = "",
        cache_dir: str | Path | None = None,
        page_size: int = 1000,
        max_retries: int = 3,
        timeout: float = 60.0,
    ):
        self.base_url = base_url or self.DEFAULT_BASE_URL
        self.cache_dir = Path(cache_dir) if cache_dir else default_cache_dir()
        self.page_size = page_size
        self.max_retries = max_retries
        self.timeout = timeout

    def _cache_path(self, target: str, measure: str) -> Path:
        safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in target)
        return self.cache_dir / f"{self.source}_{safe}_{measure}.json"

    def _get(self, url: str, params: dict) -> dict:
        backoff = 1.0
        for attempt in range(self.max_retries + 1):
            try:
                response = requests.get(url, params=params, timeout=self.timeout)
            except requests.RequestException as exc:
                raise HttpFetchError(f"{url}: {exc}") from exc
            if response.status_code == 429:
                if attempt == self.max_retries:
                    raise RateLimitedError(f"{url}: rate limited", status=429)
                time.sleep(backoff)
                backoff *= 2
                continue
            if response.status_code == 404:
                raise TargetNotFoundError(f"{url}: not found")
            if response.status_code != 200:
                raise HttpFetchError(
                    f"{url}: HTTP {response.status_code}", status=response.status_code
                )
            try:
                return response.json()
            except ValueError as exc:
                raise HttpFetchError(f"{url}: invalid JSON") from exc
        raise HttpFetchError(f"{url}: retries exhausted")

    def fetch(self, target: str, measure: str = "IC50") -> list[AffinityRecord]:
        if not target:
            raise ValueError("target must be non-empty")
        if measure not in MEASURES:
            raise ValueError(f"measure must be one of {MEASURES}")
        cache = self._cache_path(target, measure)
        if cache.exists():
            pages = json.loads(cache.read_text(encoding="utf-8"))
        else:
            pages = self._fetch_pages(target, measure)
            cache.parent.mkdir(parents=True, exist_ok=True)
            cache.write_text(json.dumps(pages), encoding="utf-8")
        records = self._parse_pages(pages, target, measure)
        if not records:
            log.warning("no %s records for target %r from %s", measure, target, self.source)
        return records

    def _fetch_pages(self, target: str, measure: str) -> list[dict]:
        raise NotImplementedError

    def _parse_pages(self, pages: list[dict], target: str, measure: str) -> list[AffinityRecord]:
        raise NotImplementedError


class ChemblClient(_CachedClient):
    source = "chembl"
    DEFAULT_BASE_URL = "https://www.ebi.ac.uk/chembl/api/data"

    def _fetch_pages(self, target: str, measure: str) -> list[dict]:
        pages = []
        offset = 0
        while True:
            data = self._get(
                f"{self.base_url}/activity.json",
                {
                    "target_pref_name__icontains": target,
                    "standard_type": measure,
                    "limit": self.page_size,
                    "offset": offset,
                },
            )
            pages.append(data)
            meta = data.get("page_meta", {})
            if not meta.get("next"):
                break
            offset += self.page_size
        return pages

    def _parse_pages(self, pages, target, measure):
        records = []
        for page in pages:
            for activity in page.get("activities", []):
                smiles = activity.get("canonical_smiles")
                if not smiles:
                    continue
                value = normalize_to_nm(
                    activity.get("standard_value"), activity.get("standard_units")
                )
                records.append(
                    AffinityRecord(
                        smiles=smiles,
                        target=target,
                        measure=measure,
                        value=value,
                        source=self.source,
                    )
                )
        return records


class BindingDbClient(_CachedClient):
    source = "bindingdb"
    DEFAULT_BASE_URL = "https://bindingdb.org/rest"

    def _fetch_pages(self, target: str, measure: str) -> list[dict]:
        data = self._get(
            f"{self.base_url}/getLigandsByTarget",
            {"target": target, "affinity_type": measure, "response": "json"},
        )
        return [data]

    def _parse_pages(self, pages, target, measure):
        records = []
        for page in pages:
            for ligand in page.get("ligands", []):
                smiles = ligand.get("smiles")
                if not smiles:
                    continue
                value = normalize_to_nm(
                    ligand.get("affinity"), ligand.get("affinity_units", "nM")
                )
                records.append(
                    AffinityRecord(
                        smiles=smiles,
                        target=target,
                        measure=measure,
                        value=value,
                        source=self.source,
                    )
                )
        return records


CLIENTS = {"chembl": ChemblClient, "bindingdb": BindingDbClient}


def fetch(
    source: str,
    target: str,
    measure: str = "IC50",
    cache_dir: str | Path | None = None,
    out_dir: str | Path = "MADD/ds",
    client: _CachedClient | None = None,
) -> tuple[list[AffinityRecord], str]:
    """Fetch records and save them; returns (records, DataGathering message).

    The message follows the fixed format
    "Found {n} entries for {target}. Saved to MADD/ds/molecules_{target}.csv".
    """
    if client is None:
        if source not in CLIENTS:
            raise ValueError(f"unknown source {source!r}; expected {sorted(CLIENTS)}")
        client = CLIENTS[source](cache_dir=cache_dir)
    records = client.fetch(target, measure)
    out_path = Path(out_dir) / f"molecules_{target}.csv"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["smiles", "target", "measure", "value_nm", "source"])
        for rec in records:
            writer.writerow(
                [rec.smiles, rec.target, rec.measure,
                 "" if rec.value is None else f"{rec.value:.6g}", rec.source]
            )
    message = f"Found {len(records)} entries for {target}. Saved to {out_path.as_posix()}"
    return records, message
