"""Median-split activity labeling for IC50 datasets."""

from __future__ import annotations

import csv
import math
import statistics
from dataclasses import dataclass
from pathlib import Path

from ..errors import EmptyDatasetError, NonPositiveValueError, ParseError
from ..molcore.parser import parse_smiles
from ..molcore.writer import write_smiles


@dataclass(frozen=True)
class LabeledRecord:
    smiles: str  # canonical
    lg_ic50: float  # log10 of the nM value
    label: int  # 1 = active (lg_ic50 strictly below the median)


@dataclass(frozen=True)
class LabeledDataset:
    records: tuple[LabeledRecord, ...]
    target: str
    median: float

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["smiles", "lg_ic50", "label"])
            for rec in self.records:
                writer.writerow([rec.smiles, f"{rec.lg_ic50:.6g}", rec.label])


def label_by_median(
    raw: list[tuple[str, float]], target: str = ""
) -> LabeledDataset:
    """Split (SMILES, IC50 nM) records into active/inactive at the median.

    Duplicate canonical SMILES collapse to the median of their values
    before the split; label 1 iff lg_ic50 < median (strict).
    """
    if not raw:
        raise EmptyDatasetError("no IC50 records")
    per_mol: dict[str, list[float]] = {}
    for smiles, ic50 in raw:
        if ic50 <= 0:
            raise NonPositiveValueError(f"IC50 must be positive, got {ic50!r} for {smiles!r}")
        canonical = write_smiles(parse_smiles(smiles))
        per_mol.setdefault(canonical, []).append(math.log10(ic50))
    if len(per_mol) < 2:
        # degenerate: a single distinct molecule still yields a dataset,
        # but nothing can sit strictly below its own median
        pass
    lg_values = {smi: statistics.median(vals) for smi, vals in per_mol.items()}
    median = statistics.median(lg_values.values())
    records = tuple(
        LabeledRecord(smiles=smi, lg_ic50=lg, label=1 if lg < median else 0)
        for smi, lg in lg_values.items()
    )
    return LabeledDataset(records=records, target=target, median=median)


def read_ic50_csv(path: str | Path) -> list[tuple[str, float]]:
    """Read input CSV with columns ``smiles,ic50_nm``; skips unparseable rows."""
    out: list[tuple[str, float]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            try:
                parse_smiles(row["smiles"])
                out.append((row["smiles"], float(row["ic50_nm"])))
            except (ParseError, KeyError, ValueError):
                continue
    return out
