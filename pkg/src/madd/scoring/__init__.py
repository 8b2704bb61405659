"""Fingerprints, drug-likeness (QED), synthetic accessibility, and
batch generation metrics."""

from .batch import BatchMetrics, batch_metrics
from .fingerprint import (
    Fingerprint,
    morgan_environment_counts,
    morgan_fingerprint,
    tanimoto,
)
from .qed import qed, qed_properties
from .sa import SaResult, sa_score, sa_score_detailed

__all__ = [
    "BatchMetrics",
    "batch_metrics",
    "Fingerprint",
    "morgan_environment_counts",
    "morgan_fingerprint",
    "tanimoto",
    "qed",
    "qed_properties",
    "SaResult",
    "sa_score",
    "sa_score_detailed",
]
