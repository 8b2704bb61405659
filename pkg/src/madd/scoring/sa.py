"""Synthetic accessibility score in [1, 10] (lower = easier).

Fragment-contribution model in the Ertl-Schuffenhauer style: common
circular environments (frequent in the reference corpus) pull the score
down, rare ones push it up, plus complexity penalties for size, spiro
and bridged ring systems, and macrocycles.  Fragment scores live in
``data/sa_fragments.tsv`` (regenerable via tools/build_sa_fragments.py);
when the table is absent the score falls back to complexity-only mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..molcore.graph import Molecule
from ..molcore.perception import sssr
from .fingerprint import morgan_environment_counts

_UNSEEN_SCORE = -4.0
_RAW_MIN = -4.0
_RAW_MAX = 2.5


@dataclass(frozen=True)
class SaResult:
    score: float
    fallback: bool  # True when the fragment table was unavailable


@lru_cache(maxsize=1)
def _fragment_scores() -> dict[int, float]:
    ref = resources.files("madd.data") / "sa_fragments.tsv"
    try:
        text = ref.read_text(encoding="utf-8")
    except FileNotFoundError:
        return {}
    scores = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        env, value = line.split("\t")
        scores[int(env)] = float(value)
    return scores


def _ring_complexity(mol: Molecule) -> tuple[int, int, bool]:
    """(spiro atoms, bridgehead atoms, has macrocycle) from SSSR."""
    rings = [set(r) for r in sssr(mol)]
    spiro = set()
    bridge = set()
    for i in range(len(rings)):
        for j in range(i + 1, len(rings)):
            shared = rings[i] & rings[j]
            if len(shared) == 1:
                spiro.update(shared)
            elif len(shared) >= 3:
                # bridged pair: the shared-path endpoints are bridgeheads
                for atom in shared:
                    in_shared = sum(
                        1 for nbr, _ in mol.neighbors(atom) if nbr in shared
                    )
                    if in_shared == 1:
                        bridge.add(atom)
    macrocycle = any(len(r) > 8 for r in rings)
    return len(spiro), len(bridge), macrocycle


def sa_score_detailed(mol: Molecule) -> SaResult:
    table = _fragment_scores()
    counts = morgan_environment_counts(mol, radius=2)
    fallback = not table
    if fallback:
        score1 = 0.0
    else:
        total = sum(counts.values())
        score1 = (
            sum(table.get(env, _UNSEEN_SCORE) * n for env, n in counts.items()) / total
        )

    n_atoms = mol.n_atoms
    size_penalty = n_atoms**1.005 - n_atoms
    n_spiro, n_bridge, macrocycle = _ring_complexity(mol)
    spiro_penalty = math.log10(n_spiro + 1)
    bridge_penalty = math.log10(n_bridge + 1)
    macro_penalty = math.log10(2) if macrocycle else 0.0
    score2 = -(size_penalty + spiro_penalty + bridge_penalty + macro_penalty)

    # symmetry bonus: few distinct environments relative to size
    n_unique = len(counts)
    score3 = 0.5 * math.log(n_atoms / n_unique) if n_atoms > n_unique else 0.0

    raw = score1 + score2 + score3
    scaled = 11.0 - (raw - _RAW_MIN + 1.0) / (_RAW_MAX - _RAW_MIN) * 9.0
    if scaled > 8.0:
        scaled = 8.0 + math.log(scaled - 8.0 + 1.0)
    return SaResult(score=min(10.0, max(1.0, scaled)), fallback=fallback)


def sa_score(mol: Molecule) -> float:
    """Synthetic accessibility in [1, 10]; deterministic per molecule."""
    return sa_score_detailed(mol).score
