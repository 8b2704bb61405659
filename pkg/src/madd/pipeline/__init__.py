"""Per-molecule property table and the cumulative GR1-GR5 filter groups."""

from .filters import (
    HitReport,
    PropertyRow,
    Thresholds,
    apply_groups,
    evaluate_batch,
    evaluate_molecule,
    rows_to_csv,
    rows_to_json,
)

__all__ = [
    "HitReport",
    "PropertyRow",
    "Thresholds",
    "apply_groups",
    "evaluate_batch",
    "evaluate_molecule",
    "rows_to_csv",
    "rows_to_json",
]
