"""Preprocessing and case-corpus building from affinity records."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ParseError
from ..molcore.descriptors import mol_weight
from ..molcore.parser import parse_smiles
from ..molcore.writer import write_smiles
from ..pipeline import Thresholds, evaluate_batch, rows_to_csv
from .client import AffinityRecord


@dataclass(frozen=True)
class CorpusSpec:
    case_name: str
    mw_max: float = 500.0
    dedupe: bool = True
    max_rows: int = 10_000

    def __post_init__(self):
        if self.mw_max <= 0:
            raise ValueError("mw_max must be positive")


def preprocess(
    records: list[AffinityRecord],
    affinity_max: float = math.inf,
    drop_missing: bool = True,
) -> list[AffinityRecord]:
    """Drop missing values (optional), drop values above affinity_max,
    and collapse duplicate canonical SMILES to the median value."""
    kept: list[AffinityRecord] = []
    for rec in records:
        if rec.value is None:
            if drop_missing:
                continue
            kept.append(rec)
            continue
        if rec.value > affinity_max:
            continue
        kept.append(rec)

    by_canonical: dict[str, list[AffinityRecord]] = {}
    order: list[str] = []
    for rec in kept:
        try:
            canonical = write_smiles(parse_smiles(rec.smiles))
        except ParseError:
            continue
        if canonical not in by_canonical:
            by_canonical[canonical] = []
            order.append(canonical)
        by_canonical[canonical].append(rec)

    out = []
    for canonical in order:
        group = by_canonical[canonical]
        values = [r.value for r in group if r.value is not None]
        value = statistics.median(values) if values else None
        first = group[0]
        out.append(
            AffinityRecord(
                smiles=canonical,
                target=first.target,
                measure=first.measure,
                value=value,
                source=first.source,
            )
        )
    return out


@dataclass
class CorpusBuildResult:
    path: Path
    n_rows: int
    n_excluded_mw: int
    n_failed_parse: int
    smiles: list[str] = field(default_factory=list)


def build_corpus(
    records: list[AffinityRecord],
    spec: CorpusSpec,
    docking_provider,
    out_dir: str | Path = "MADD/ds",
    thresholds: Thresholds | None = None,
    activity_model=None,
) -> CorpusBuildResult:
    """Write a case corpus CSV with the property-row column schema.

    Molecules over mw_max or failing parse are excluded and counted.
    """
    seen: set[str] = set()
    smiles_list: list[str] = []
    n_excluded_mw = 0
    n_failed_parse = 0
    for rec in records:
        if len(smiles_list) >= spec.max_rows:
            break
        try:
            mol = parse_smiles(rec.smiles)
        except ParseError:
            n_failed_parse += 1
            continue
        if mol_weight(mol) > spec.mw_max:
            n_excluded_mw += 1
            continue
        canonical = write_smiles(mol)
        if spec.dedupe and canonical in seen:
            continue
        seen.add(canonical)
        smiles_list.append(canonical)

    rows = evaluate_batch(
        smiles_list,
        docking_provider,
        thresholds,
        activity_model=activity_model,
        target=records[0].target if records else "",
    )
    out_path = Path(out_dir) / f"corpus_{spec.case_name}.csv"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    out_path.write_text(rows_to_csv(rows), encoding="utf-8")
    return CorpusBuildResult(
        path=out_path,
        n_rows=len(smiles_list),
        n_excluded_mw=n_excluded_mw,
        n_failed_parse=n_failed_parse,
        smiles=smiles_list,
    )
