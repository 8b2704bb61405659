"""Morgan circular fingerprints and Tanimoto similarity.

Atom environments are canonical invariant tuples hashed with a fixed
64-bit FNV-1a over their UTF-8 serialization, so bit patterns are
identical across platforms and Python hash seeds.  Bits fold into
``n_bits`` by modulo.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import LengthMismatchError
from ..molcore.graph import Molecule

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = (1 << 64) - 1


def _fnv1a(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


@dataclass(frozen=True, eq=False)
class Fingerprint:
    words: np.ndarray  # uint64, length n_bits // 64
    n_bits: int
    radius: int

    def __post_init__(self):
        self.words.setflags(write=False)

    @property
    def popcount(self) -> int:
        return kernels.popcount(self.words)

    def on_bits(self) -> list[int]:
        out = []
        for w, word in enumerate(self.words):
            word = int(word)
            while word:
                low = word & -word
                out.append(w * 64 + low.bit_length() - 1)
                word ^= low
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Fingerprint)
            and self.n_bits == other.n_bits
            and self.radius == other.radius
            and bool(np.array_equal(self.words, other.words))
        )


def _initial_invariants(mol: Molecule) -> list[int]:
    invs = []
    for idx, atom in enumerate(mol.atoms):
        key = "|".join(
            str(part)
            for part in (
                atom.element,
                atom.formal_charge,
                mol.degree(idx),
                atom.explicit_h,
                int(atom.ring_member),
                int(atom.aromatic),
            )
        )
        invs.append(_fnv1a(key))
    return invs


def morgan_fingerprint(mol: Molecule, radius: int = 2, n_bits: int = 2048) -> Fingerprint:
    """Circular-environment fingerprint folded into ``n_bits``."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if n_bits < 64 or n_bits & (n_bits - 1):
        raise ValueError("n_bits must be a power of two >= 64")
    invariants = _initial_invariants(mol)
    environments = set(invariants)
    current = invariants
    for _ in range(radius):
        nxt = []
        for idx in range(mol.n_atoms):
            parts = sorted(
                (bond.order, current[nbr]) for nbr, bond in mol.neighbors(idx)
            )
            key = str(current[idx]) + "".join(f";{o},{h}" for o, h in parts)
            nxt.append(_fnv1a(key))
        current = nxt
        environments.update(current)
    words = np.zeros(n_bits // 64, dtype=np.uint64)
    for env in environments:
        bit = env % n_bits
        words[bit // 64] |= np.uint64(1 << (bit % 64))
    return Fingerprint(words=words, n_bits=n_bits, radius=radius)


def morgan_environment_counts(mol: Molecule, radius: int = 2):
    """Counter of unfolded environment ids over radii 0..radius.

    Each (atom, radius) environment contributes one count; used by the
    synthetic-accessibility fragment model.
    """
    from collections import Counter

    counts: Counter[int] = Counter()
    current = _initial_invariants(mol)
    counts.update(current)
    for _ in range(radius):
        nxt = []
        for idx in range(mol.n_atoms):
            parts = sorted(
                (bond.order, current[nbr]) for nbr, bond in mol.neighbors(idx)
            )
            key = str(current[idx]) + "".join(f";{o},{h}" for o, h in parts)
            nxt.append(_fnv1a(key))
        current = nxt
        counts.update(current)
    return counts


def tanimoto(a: Fingerprint, b: Fingerprint) -> float:
    """|a AND b| / |a OR b|; two empty fingerprints score 0."""
    if a.n_bits != b.n_bits:
        raise LengthMismatchError(
            f"fingerprint lengths differ: {a.n_bits} != {b.n_bits}"
        )
    return kernels.tanimoto(a.words, b.words)
