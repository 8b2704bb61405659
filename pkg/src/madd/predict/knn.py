"""k-nearest-neighbour IC50 activity classifier over Morgan fingerprints.

Reference implementation behind the swappable activity-model interface;
training is indexing only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import BadKError
from ..molcore.graph import Molecule
from ..molcore.parser import parse_smiles
from ..scoring.fingerprint import Fingerprint, morgan_fingerprint, tanimoto
from .labeling import LabeledDataset


@dataclass(frozen=True)
class Prediction:
    label: int
    margin: float  # |votes_1 - votes_0| / k


@dataclass(frozen=True)
class ActivityModel:
    neighbors: tuple[tuple[Fingerprint, int], ...]
    k: int
    radius: int
    n_bits: int
    target: str = ""

    def predict(self, mol: Molecule) -> Prediction:
        query = morgan_fingerprint(mol, radius=self.radius, n_bits=self.n_bits)
        # stable sort keeps insertion order on distance ties (documented)
        order = sorted(
            range(len(self.neighbors)),
            key=lambda i: 1.0 - tanimoto(query, self.neighbors[i][0]),
        )
        votes = sum(self.neighbors[i][1] for i in order[: self.k])
        label = 1 if 2 * votes > self.k else 0
        margin = abs(2 * votes - self.k) / self.k
        return Prediction(label=label, margin=margin)

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "radius": self.radius,
                "n_bits": self.n_bits,
                "target": self.target,
                "neighbors": [
                    {"words": [int(w) for w in fp.words], "label": label}
                    for fp, label in self.neighbors
                ],
            },
            sort_keys=True,
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_json(cls, text: str) -> "ActivityModel":
        data = json.loads(text)
        neighbors = tuple(
            (
                Fingerprint(
                    words=np.array(item["words"], dtype=np.uint64),
                    n_bits=data["n_bits"],
                    radius=data["radius"],
                ),
                int(item["label"]),
            )
            for item in data["neighbors"]
        )
        return cls(
            neighbors=neighbors,
            k=data["k"],
            radius=data["radius"],
            n_bits=data["n_bits"],
            target=data.get("target", ""),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ActivityModel":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def train_knn(
    ds: LabeledDataset, k: int, radius: int = 2, n_bits: int = 2048
) -> ActivityModel:
    if k < 1 or k % 2 == 0:
        raise BadKError(f"k must be an odd positive integer, got {k}")
    if k > len(ds.records):
        raise BadKError(f"k={k} exceeds dataset size {len(ds.records)}")
    neighbors = tuple(
        (morgan_fingerprint(parse_smiles(rec.smiles), radius=radius, n_bits=n_bits), rec.label)
        for rec in ds.records
    )
    return ActivityModel(
        neighbors=neighbors, k=k, radius=radius, n_bits=n_bits, target=ds.target
    )


def predict_ic50(model: ActivityModel, mol: Molecule) -> Prediction:
    return model.predict(mol)
