"""Quantitative estimate of drug-likeness (QED).

Weighted geometric mean of eight ADS-transformed property desirabilities
(MW, ALOGP, HBA, HBD, PSA, ROTB, AROM, ALERTS) using the published mean
weights.  Parameter curves, acceptor patterns, and alert patterns are
shipped as TSV data files.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ..errors import ParseError, UnsupportedFeatureError
from ..molcore.descriptors import crippen_logp, hbd, mol_weight, rotatable_bonds, tpsa
from ..molcore.graph import DOUBLE, Molecule
from ..molcore.perception import aromatic_ring_count
from ..substructure.matcher import match
from ..substructure.smarts import parse_smarts

log = logging.getLogger(__name__)

PROPERTY_NAMES = ("MW", "ALOGP", "HBA", "HBD", "PSA", "ROTB", "AROM", "ALERTS")


@dataclass(frozen=True)
class AdsParameter:
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float
    DMAX: float


@dataclass(frozen=True)
class QedParams:
    curves: dict[str, AdsParameter]
    weights: dict[str, float]


def _read_table(name: str) -> list[str]:
    text = (resources.files("madd.data") / name).read_text(encoding="utf-8")
    return [
        line
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]


@lru_cache(maxsize=1)
def default_params() -> QedParams:
    curves = {}
    weights = {}
    for line in _read_table("qed_params.tsv"):
        parts = line.split("\t")
        name = parts[0]
        a, b, c, d, e, f, dmax, weight = map(float, parts[1:9])
        curves[name] = AdsParameter(a, b, c, d, e, f, dmax)
        weights[name] = weight
    missing = set(PROPERTY_NAMES) - set(curves)
    if missing:
        raise ValueError(f"qed_params.tsv missing properties: {sorted(missing)}")
    return QedParams(curves=curves, weights=weights)


@lru_cache(maxsize=1)
def _acceptor_patterns():
    return [
        parse_smarts(line.split("\t")[1]) for line in _read_table("qed_acceptors.tsv")
    ]


@lru_cache(maxsize=1)
def _alert_patterns():
    patterns = []
    skipped = 0
    for line in _read_table("qed_alerts.tsv"):
        name, smarts = line.split("\t")
        try:
            patterns.append(parse_smarts(smarts))
        except (UnsupportedFeatureError, ParseError) as exc:
            skipped += 1
            log.debug("qed alert %s skipped: %s", name, exc)
    if skipped:
        log.info("qed alerts: %d patterns outside SMARTS subset skipped", skipped)
    return patterns


def _amine_acceptors(mol: Molecule) -> int:
    """Neutral trivalent aliphatic N not adjacent to C=O or S=O."""
    count = 0
    for idx, atom in enumerate(mol.atoms):
        if atom.element != "N" or atom.aromatic or atom.formal_charge != 0:
            continue
        if mol.degree(idx) + atom.explicit_h != 3:
            continue
        if math.floor(mol.bond_order_sum(idx)) + atom.explicit_h != 3:
            continue
        adjacent_acyl = False
        for nbr, _ in mol.neighbors(idx):
            if mol.atoms[nbr].element in ("C", "S") and any(
                b.order == DOUBLE and mol.atoms[n2].element == "O"
                for n2, b in mol.neighbors(nbr)
            ):
                adjacent_acyl = True
                break
        if not adjacent_acyl:
            count += 1
    return count


def qed_hba(mol: Molecule) -> int:
    """Acceptor count per the QED pattern list (not the Lipinski rule)."""
    total = sum(match(mol, p) for p in _acceptor_patterns())
    return total + _amine_acceptors(mol)


def qed_alerts(mol: Molecule) -> int:
    """Number of QED structural-alert patterns with at least one match."""
    return sum(1 for p in _alert_patterns() if match(mol, p) > 0)


def qed_properties(mol: Molecule) -> dict[str, float]:
    return {
        "MW": mol_weight(mol),
        "ALOGP": crippen_logp(mol),
        "HBA": qed_hba(mol),
        "HBD": hbd(mol),
        "PSA": tpsa(mol),
        "ROTB": rotatable_bonds(mol),
        "AROM": aromatic_ring_count(mol),
        "ALERTS": qed_alerts(mol),
    }


def ads(x: float, p: AdsParameter) -> float:
    exp1 = 1 + math.exp(-(x - p.C + p.D / 2) / p.E)
    exp2 = 1 + math.exp(-(x - p.C - p.D / 2) / p.F)
    return (p.A + p.B / exp1 * (1 - 1 / exp2)) / p.DMAX


def qed(mol: Molecule, params: QedParams | None = None) -> float:
    """Drug-likeness in (0, 1]: exp(weighted mean log desirability)."""
    if params is None:
        params = default_params()
    props = qed_properties(mol)
    total = 0.0
    weight_sum = 0.0
    for name in PROPERTY_NAMES:
        desirability = ads(props[name], params.curves[name])
        weight = params.weights[name]
        total += weight * math.log(desirability)
        weight_sum += weight
    return math.exp(total / weight_sum)
