#!/usr/bin/env python3
"""Regenerate the SA fragment-score table (data/sa_fragments.tsv).

Recipe: count radius-0..2 circular environments over the bundled corpus;
score(env) = 3 * log10(freq / p80) where p80 is the 80th-percentile
environment frequency, clamped to [-4, 6].  Common environments score
positive (easy), rare ones negative (hard).  Run from the repo root:

    python3 tools/build_sa_fragments.py
"""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

from madd.molcore import parse_smiles
from madd.scoring.fingerprint import morgan_environment_counts


def main() -> None:
    data_dir = Path(__file__).resolve().parent.parent / "src/madd/data"
    counts: Counter[int] = Counter()
    for line in (data_dir / "corpus.smi").read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        counts.update(morgan_environment_counts(parse_smiles(line), radius=2))

    freqs = sorted(counts.values())
    p80 = freqs[int(0.8 * (len(freqs) - 1))]
    rows = []
    for env, freq in sorted(counts.items()):
        score = max(-4.0, min(6.0, 3.0 * math.log10(freq / p80)))
        rows.append(f"{env}\t{score:.4f}")

    out = data_dir / "sa_fragments.tsv"
    header = (
        "# SA fragment scores: 3*log10(freq / p80) over the bundled corpus,\n"
        f"# clamped to [-4, 6]; p80 = {p80}. Regenerate with tools/build_sa_fragments.py\n"
    )
    out.write_text(header + "\n".join(rows) + "\n", encoding="utf-8")
    print(f"wrote {len(rows)} fragment scores to {out} (p80={p80})")


if __name__ == "__main__":
    main()
