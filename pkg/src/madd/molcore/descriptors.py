"""Physicochemical descriptors: MW, logP, TPSA, HBD/HBA, rotatable bonds,
aromatic rings.

LogP uses Wildman-Crippen atomic contributions (``data/crippen.tsv``,
first matching pattern wins); hydrogen contributions are assigned per
attached hydrogen from the heavy atom's environment.  TPSA uses Ertl
fragment contributions (``data/tpsa.tsv``) over N/O atoms (S/P rows are
shipped but excluded from the default sum, matching common practice).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule
from .perception import aromatic_ring_count, sssr

# hydrogen logP contributions (Wildman-Crippen H1-HS)
_H_ON_CARBON = 0.1230
_H_ON_ALCOHOL = -0.2677  # also H on B/Si/other non-(C,N,O) atoms
_H_ON_NITROGEN = 0.2142  # amines and hydroxylamine O-H
_H_ON_ACID = 0.2980  # acid/enol/peroxide O-H
_H_DEFAULT = 0.1125


@dataclass(frozen=True)
class DescriptorSet:
    mol_weight: float
    logp: float
    tpsa: float
    hbd: int
    hba: int
    rotatable_bonds: int
    aromatic_rings: int


def _read_table(name: str) -> list[str]:
    text = (resources.files("madd.data") / name).read_text(encoding="utf-8")
    return [
        line
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


@lru_cache(maxsize=1)
def _crippen_table():
    from ..substructure.smarts import parse_smarts

    rows = []
    for line in _read_table("crippen.tsv"):
        label, smarts, value = line.split("\t")
        rows.append((label, parse_smarts(smarts), float(value)))
    return rows


@lru_cache(maxsize=1)
def _tpsa_table():
    table = {}
    for line in _read_table("tpsa.tsv"):
        parts = line.split("\t")
        el, arom, q, h, s, d, t, a, r3 = parts[0], *map(int, parts[1:9])
        table[(el, bool(arom), q, h, s, d, t, a, bool(r3))] = float(parts[9])
    return table


def mol_weight(mol: Molecule) -> float:
    total = 0.0
    for atom in mol.atoms:
        total += atom.weight
        total += atom.explicit_h * 1.008
    return total


def _hydrogen_logp(mol: Molecule, idx: int) -> float:
    atom = mol.atoms[idx]
    el = atom.element
    if el == "C" or el == "H":
        return _H_ON_CARBON
    if el == "N":
        return _H_ON_NITROGEN
    if el == "O":
        neighbor_els = [mol.atoms[n].element for n, _ in mol.neighbors(idx)]
        if "N" in neighbor_els:
            return _H_ON_NITROGEN
        if "O" in neighbor_els or "S" in neighbor_els:
            return _H_ON_ACID
        for nbr, _ in mol.neighbors(idx):
            if mol.atoms[nbr].element == "C" and any(
                b.order == DOUBLE and mol.atoms[n2].element in ("C", "N", "O", "S")
                for n2, b in mol.neighbors(nbr)
            ):
                return _H_ON_ACID  # acid or enol hydroxyl
        return _H_ON_ALCOHOL
    if el in ("S",):
        return _H_DEFAULT
    return _H_ON_ALCOHOL


def crippen_logp(mol: Molecule) -> float:
    from ..substructure.matcher import MatchContext

    ctx = MatchContext(mol)
    table = _crippen_table()
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        for _, pattern, value in table:
            if ctx.match_at(pattern, idx):
                total += value
                break
        if atom.explicit_h:
            total += atom.explicit_h * _hydrogen_logp(mol, idx)
    return total


def tpsa(mol: Molecule, include_sp: bool = False) -> float:
    table = _tpsa_table()
    elements = ("N", "O", "S", "P") if include_sp else ("N", "O")
    three_rings = [set(r) for r in sssr(mol) if len(r) == 3]
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        if atom.element not in elements:
            continue
        s = d = t = a = 0
        for _, bond in mol.neighbors(idx):
            if bond.order == SINGLE:
                s += 1
            elif bond.order == DOUBLE:
                d += 1
            elif bond.order == TRIPLE:
                t += 1
            elif bond.order == AROMATIC:
                a += 1
        in3 = any(idx in ring for ring in three_rings)
        key = (atom.element, atom.aromatic, atom.formal_charge, atom.explicit_h, s, d, t, a)
        value = table.get((*key, in3))
        if value is None and in3:
            value = table.get((*key, False))
        if value is not None:
            total += value
    return total


def hbd(mol: Molecule) -> int:
    """N/O atoms bearing at least one hydrogen (Lipinski donor rule)."""
    return sum(
        1
        for i, atom in enumerate(mol.atoms)
        if atom.element in ("N", "O") and mol.total_h(i) >= 1
    )


def hba(mol: Molecule) -> int:
    """N/O atoms that are not positively charged (Lipinski acceptor rule)."""
    return sum(
        1 for atom in mol.atoms if atom.element in ("N", "O") and atom.formal_charge <= 0
    )


def _is_amide_cn(mol: Molecule, a: int, b: int) -> bool:
    for c, n in ((a, b), (b, a)):
        if mol.atoms[c].element == "C" and mol.atoms[n].element == "N":
            if any(
                bond.order == DOUBLE and mol.atoms[nbr].element == "O"
                for nbr, bond in mol.neighbors(c)
            ):
                return True
    return False


def rotatable_bonds(mol: Molecule) -> int:
    """Non-ring single bonds between heavy atoms that each have another
    heavy neighbor, excluding amide C-N bonds."""
    count = 0
    for bond in mol.bonds:
        if bond.order != SINGLE or bond.ring_member:
            continue
        a, b = bond.a, bond.b
        if mol.atoms[a].element == "H" or mol.atoms[b].element == "H":
            continue
        if mol.heavy_degree(a) < 2 or mol.heavy_degree(b) < 2:
            continue
        if _is_amide_cn(mol, a, b):
            continue
        count += 1
    return count


def descriptors(mol: Molecule) -> DescriptorSet:
    """All seven descriptors for a perceived molecule."""
    return DescriptorSet(
        mol_weight=mol_weight(mol),
        logp=crippen_logp(mol),
        tpsa=tpsa(mol),
        hbd=hbd(mol),
        hba=hba(mol),
        rotatable_bonds=rotatable_bonds(mol),
        aromatic_rings=aromatic_ring_count(mol),
    )
