"""Batch-level generation metrics: validity, novelty, duplicates,
diversity, and mean docking."""

from __future__ import annotations

import csv
import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .. import kernels
from ..errors import ParseError
from ..molcore.parser import parse_smiles
from ..molcore.writer import write_smiles
from .fingerprint import morgan_fingerprint

_DIVERSITY_SAMPLE = 2000


@dataclass(frozen=True)
class BatchMetrics:
    validity: float  # %
    novelty: float  # % of valid unique molecules absent from the corpus
    duplicates: float  # % of valid molecules repeating within the batch
    diversity: float  # 1 - mean pairwise Tanimoto, in [0,1]
    mean_docking: float | None = None
    sample_seed: int | None = None  # set when diversity was sampled

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    def write_csv(self, path: str | Path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(fh, fieldnames=list(asdict(self)))
            writer.writeheader()
            writer.writerow(asdict(self))


def batch_metrics(
    generated: list[str],
    train_corpus: set[str] | None = None,
    docking_scores: list[float] | None = None,
    seed: int = 0,
) -> BatchMetrics:
    """Generation-quality metrics over a batch of SMILES.

    ``train_corpus`` must contain canonical SMILES (as produced by
    ``write_smiles``); novelty is exact canonical-set membership.
    Diversity samples a seeded 2,000-molecule subset when the valid
    unique set is larger.
    """
    train_corpus = train_corpus or set()
    canonical: list[str] = []
    for text in generated:
        try:
            canonical.append(write_smiles(parse_smiles(text)))
        except ParseError:
            continue
    total = len(generated)
    n_valid = len(canonical)
    validity = 100.0 * n_valid / total if total else 0.0

    unique = list(dict.fromkeys(canonical))
    duplicates = 100.0 * (n_valid - len(unique)) / n_valid if n_valid else 0.0
    novel = [smi for smi in unique if smi not in train_corpus]
    novelty = 100.0 * len(novel) / len(unique) if unique else 0.0

    sample_seed = None
    sample = unique
    if len(sample) > _DIVERSITY_SAMPLE:
        sample_seed = seed
        rng = random.Random(seed)
        sample = rng.sample(sample, _DIVERSITY_SAMPLE)
    if len(sample) >= 2:
        fps = np.stack(
            [morgan_fingerprint(parse_smiles(smi)).words for smi in sample]
        )
        diversity = 1.0 - kernels.mean_pairwise_tanimoto(fps)
    else:
        diversity = 0.0

    mean_docking = None
    if docking_scores:
        mean_docking = sum(docking_scores) / len(docking_scores)

    return BatchMetrics(
        validity=validity,
        novelty=novelty,
        duplicates=duplicates,
        diversity=diversity,
        mean_docking=mean_docking,
        sample_seed=sample_seed,
    )
