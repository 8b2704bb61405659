"""IC50 activity classification and docking-score providers."""

from .docking import DockingProvider, parse_best_affinity, stub_docking_score
from .knn import ActivityModel, Prediction, predict_ic50, train_knn
from .labeling import LabeledDataset, LabeledRecord, label_by_median, read_ic50_csv

__all__ = [
    "DockingProvider",
    "parse_best_affinity",
    "stub_docking_score",
    "ActivityModel",
    "Prediction",
    "predict_ic50",
    "train_knn",
    "LabeledDataset",
    "LabeledRecord",
    "label_by_median",
    "read_ic50_csv",
]
