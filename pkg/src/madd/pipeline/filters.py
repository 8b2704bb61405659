"""Property rows and cumulative filter groups GR1-GR5.

GR1 = docking <= docking_max AND ic50 == 1; GR2 adds SA <= sa_max; GR3
adds Brenk == 0; GR4 adds SureChEMBL == Glaxo == PAINS == 0; GR5 adds
QED > qed_min (strict).  Percentages are computed over valid molecules.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

from ..errors import ParseError
from ..molcore.descriptors import DescriptorSet, descriptors
from ..molcore.parser import parse_smiles
from ..molcore.writer import write_smiles
from ..predict.docking import DockingProvider
from ..scoring.qed import qed
from ..scoring.sa import sa_score
from ..substructure.catalog import apply_catalog, get_catalog


@dataclass(frozen=True)
class Thresholds:
    docking_max: float = -7.0
    ic50_required: int = 1
    sa_max: float = 3.0
    qed_min: float = 0.6

    def __post_init__(self):
        if self.docking_max >= 0:
            raise ValueError("docking_max must be negative")
        if not 1.0 <= self.sa_max <= 10.0:
            raise ValueError("sa_max must be in [1, 10]")
        if not 0.0 < self.qed_min < 1.0:
            raise ValueError("qed_min must be in (0, 1)")


@dataclass(frozen=True)
class PropertyRow:
    smiles: str
    valid: bool
    duplicate: bool = False
    descriptors: DescriptorSet | None = None
    brenk: int = 0
    glaxo: int = 0
    surechembl: int = 0
    pains: int = 0
    qed: float = 0.0
    sa: float = 10.0
    docking_score: float = 0.0
    ic50: int = 0
    gr1: bool = False
    gr2: bool = False
    gr3: bool = False
    gr4: bool = False
    gr5: bool = False
    partial: bool = False  # a provider failed; scored columns incomplete
    error: str = ""


@dataclass(frozen=True)
class HitReport:
    percentages: dict  # {"GR1": float, ..., "GR5": float} over valid rows
    n_total: int
    n_valid: int
    empty_batch: bool
    hits: tuple[PropertyRow, ...] = ()
    hit_group: str = "GR5"


def group_flags(
    docking_score: float,
    ic50: int,
    sa: float,
    brenk: int,
    glaxo: int,
    surechembl: int,
    pains: int,
    qed_value: float,
    thresholds: Thresholds,
) -> tuple[bool, bool, bool, bool, bool]:
    gr1 = docking_score <= thresholds.docking_max and ic50 == thresholds.ic50_required
    gr2 = gr1 and sa <= thresholds.sa_max
    gr3 = gr2 and brenk == 0
    gr4 = gr3 and surechembl == 0 and glaxo == 0 and pains == 0
    gr5 = gr4 and qed_value > thresholds.qed_min
    return gr1, gr2, gr3, gr4, gr5


def evaluate_molecule(
    smiles: str,
    docking_provider: DockingProvider,
    thresholds: Thresholds | None = None,
    activity_model=None,
    target: str = "",
    duplicate: bool = False,
) -> PropertyRow:
    thresholds = thresholds or Thresholds()
    try:
        mol = parse_smiles(smiles)
    except ParseError as exc:
        return PropertyRow(smiles=smiles, valid=False, error=str(exc))

    partial = False
    error = ""
    desc = descriptors(mol)
    alerts = {}
    for key, name in (
        ("brenk", "Brenk"),
        ("glaxo", "Glaxo"),
        ("surechembl", "SureChEMBL"),
        ("pains", "PAINS"),
    ):
        alerts[key] = apply_catalog(mol, get_catalog(name))
    qed_value = qed(mol)
    sa_value = sa_score(mol)
    try:
        docking = docking_provider.score(mol, target)
    except Exception as exc:  # provider errors mark the row partial
        docking = 0.0
        partial = True
        error = f"docking: {exc}"
    if activity_model is not None:
        ic50 = activity_model.predict(mol).label
    else:
        ic50 = 0
    gr1, gr2, gr3, gr4, gr5 = group_flags(
        docking, ic50, sa_value,
        alerts["brenk"], alerts["glaxo"], alerts["surechembl"], alerts["pains"],
        qed_value, thresholds,
    )
    return PropertyRow(
        smiles=smiles,
        valid=True,
        duplicate=duplicate,
        descriptors=desc,
        brenk=alerts["brenk"],
        glaxo=alerts["glaxo"],
        surechembl=alerts["surechembl"],
        pains=alerts["pains"],
        qed=qed_value,
        sa=sa_value,
        docking_score=docking,
        ic50=ic50,
        gr1=gr1 and not partial,
        gr2=gr2 and not partial,
        gr3=gr3 and not partial,
        gr4=gr4 and not partial,
        gr5=gr5 and not partial,
        partial=partial,
        error=error,
    )


def evaluate_batch(
    batch: list[str],
    docking_provider: DockingProvider,
    thresholds: Thresholds | None = None,
    activity_model=None,
    target: str = "",
) -> list[PropertyRow]:
    """Evaluate a batch; duplicate flags are set on repeated canonical
    SMILES (first occurrence is not a duplicate)."""
    seen: set[str] = set()
    rows = []
    for smiles in batch:
        try:
            canonical = write_smiles(parse_smiles(smiles))
        except ParseError:
            rows.append(evaluate_molecule(smiles, docking_provider, thresholds))
            continue
        duplicate = canonical in seen
        seen.add(canonical)
        rows.append(
            evaluate_molecule(
                smiles,
                docking_provider,
                thresholds,
                activity_model=activity_model,
                target=target,
                duplicate=duplicate,
            )
        )
    return rows


GROUP_NAMES = ("GR1", "GR2", "GR3", "GR4", "GR5")


def apply_groups(rows: list[PropertyRow], hit_group: str = "GR5") -> HitReport:
    valid = [row for row in rows if row.valid]
    if not valid:
        return HitReport(
            percentages={name: 0.0 for name in GROUP_NAMES},
            n_total=len(rows),
            n_valid=0,
            empty_batch=not rows,
            hits=(),
            hit_group=hit_group,
        )
    n = len(valid)
    percentages = {
        "GR1": 100.0 * sum(r.gr1 for r in valid) / n,
        "GR2": 100.0 * sum(r.gr2 for r in valid) / n,
        "GR3": 100.0 * sum(r.gr3 for r in valid) / n,
        "GR4": 100.0 * sum(r.gr4 for r in valid) / n,
        "GR5": 100.0 * sum(r.gr5 for r in valid) / n,
    }
    attr = hit_group.lower()
    hits = tuple(row for row in valid if getattr(row, attr))
    return HitReport(
        percentages=percentages,
        n_total=len(rows),
        n_valid=n,
        empty_batch=False,
        hits=hits,
        hit_group=hit_group,
    )


CSV_COLUMNS = (
    "Smiles", "Brenk", "QED", "Synthetic Accessibility", "LogP",
    "Polar Surface Area", "H-bond Donors", "H-bond Acceptors",
    "Rotatable Bonds", "Aromatic Rings", "Glaxo", "SureChEMBL", "PAINS",
    "Validity", "Duplicates", "docking_score", "IC50",
    "GR1", "GR2", "GR3", "GR4", "GR5",
)


def _row_record(row: PropertyRow) -> dict:
    desc = row.descriptors
    return {
        "Smiles": row.smiles,
        "Brenk": row.brenk,
        "QED": round(row.qed, 6),
        "Synthetic Accessibility": round(row.sa, 6),
        "LogP": round(desc.logp, 6) if desc else "",
        "Polar Surface Area": round(desc.tpsa, 6) if desc else "",
        "H-bond Donors": desc.hbd if desc else "",
        "H-bond Acceptors": desc.hba if desc else "",
        "Rotatable Bonds": desc.rotatable_bonds if desc else "",
        "Aromatic Rings": desc.aromatic_rings if desc else "",
        "Glaxo": row.glaxo,
        "SureChEMBL": row.surechembl,
        "PAINS": row.pains,
        "Validity": int(row.valid),
        "Duplicates": int(row.duplicate),
        "docking_score": round(row.docking_score, 6),
        "IC50": row.ic50,
        "GR1": int(row.gr1),
        "GR2": int(row.gr2),
        "GR3": int(row.gr3),
        "GR4": int(row.gr4),
        "GR5": int(row.gr5),
    }


def rows_to_csv(rows: list[PropertyRow]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(_row_record(row))
    return buf.getvalue()


def rows_to_json(rows: list[PropertyRow]) -> str:
    return json.dumps([_row_record(row) for row in rows], indent=2)
