#!/usr/bin/env python3
"""Regenerate the bundled reference corpus (data/corpus.smi).

Deterministic enumeration: a set of drug-like seed molecules plus
scaffold x substituent combinations, filtered to parseable structures
with <= 30 heavy atoms, deduplicated by canonical SMILES, truncated to
1,000 entries.  Run from the repository root:

    python3 tools/build_corpus.py
"""

from __future__ import annotations

from pathlib import Path

from madd.errors import ParseError
from madd.molcore import parse_smiles, write_smiles

SEEDS = [
    # common drugs and fragments, written in assorted (non-canonical) forms
    "CC(=O)Oc1ccccc1C(=O)O",
    "Cn1cnc2c1c(=O)n(C)c(=O)n2C",
    "CC(=O)Nc1ccc(O)cc1",
    "CC(C)Cc1ccc(cc1)C(C)C(=O)O",
    "OC(=O)c1ccccc1O",
    "Clc1ccccc1",
    "c1ccc2[nH]ccc2c1",
    "c1ccc2c(c1)oc1ccccc12",
    "c1ccc2c(c1)sc1ccccc12",
    "O=C(O)CCc1ccccc1",
    "NCCc1ccc(O)c(O)c1",
    "CN1CCC[C@H]1c1cccnc1",
    "OCC1OC(O)C(O)C(O)C1O",
    "NC(=O)c1ccc[nH]1",
    "CC(N)Cc1ccccc1",
    "CN(C)CCc1c[nH]c2ccccc12",
    "Nc1ncnc2[nH]cnc12",
    "O=c1[nH]cnc2[nH]cnc12",
    "Nc1nc2[nH]cnc2c(=O)[nH]1",
    "CCN(CC)C(=O)c1ccccc1",
    "NS(=O)(=O)c1ccccc1",
    "COc1ccc2cc(ccc2c1)C(C)C(=O)O",
    "Cc1ccccc1C",
    "CCOC(=O)c1ccccc1N",
    "O=C1CCCCC1",
    "C1CCNCC1",
    "C1CCOC1",
    "C1CCSC1",
    "c1ccncc1",
    "c1ccoc1",
    "c1ccsc1",
    "c1cc[nH]c1",
    "c1cnc2[nH]ccc2c1",
    "O=C(Nc1ccccc1)c1ccccc1",
    "CC(=O)N1CCCC1",
    "FC(F)(F)c1ccccc1",
    "N#Cc1ccccc1",
    "O=[N+]([O-])c1ccccc1",
    "CSc1ccccc1",
    "CC1=CC(=O)CC(C)(C)C1",
    "C1CC2CCC1CC2",
    "OC1CCCCC1O",
    "CC(C)(C)OC(=O)N1CCNCC1",
    "O=S(=O)(N)c1ccc(N)cc1",
    "Ic1ccccc1",
    "Brc1ccc(Br)cc1",
]

SCAFFOLDS = [
    "c1ccc({X})cc1",
    "c1ccc2ccccc2c1{X}",
    "c1ccnc({X})c1",
    "c1ccc({X})nc1",
    "c1csc({X})c1",
    "c1coc({X})c1",
    "c1cc[nH]c1{X}",
    "C1CCCCC1{X}",
    "C1CCN({X})CC1",
    "C1CCOC1{X}",
    "O=C1CCCN1{X}",
    "c1ccc2[nH]c({X})cc2c1",
    "c1ccc2nc({X})ccc2c1",
    "c1ccc2c(c1)CCN2{X}",
    "c1cnc2[nH]cnc2c1{X}",
    "c1ccc(-c2ccccc2{X})cc1",
    "c1ccc(Cc2ccccc2{X})cc1",
    "c1ccc(Oc2ccccc2{X})cc1",
    "O=C(c1ccccc1)c1ccccc1{X}",
    "c1ccc(CN2CCCC2{X})cc1",
]

SUBSTITUENTS = [
    "C", "CC", "CCC", "C(C)C", "O", "OC", "OCC", "N", "NC", "N(C)C",
    "F", "Cl", "Br", "C#N", "C(F)(F)F", "C(=O)O", "C(=O)OC", "C(=O)N",
    "C(=O)C", "S(=O)(=O)N", "SC", "CO", "CN", "CCl", "C=C",
    "NC(=O)C", "OC(=O)C", "CC#N", "CC(=O)O", "N=O",
]


def main() -> None:
    out_path = Path(__file__).resolve().parent.parent / "src/madd/data/corpus.smi"
    seen: set[str] = set()
    lines: list[str] = []

    def add(smiles: str) -> None:
        if len(lines) >= 1000:
            return
        try:
            mol = parse_smiles(smiles)
        except ParseError:
            return
        if mol.n_atoms > 30:
            return
        canonical = write_smiles(mol)
        if canonical in seen:
            return
        seen.add(canonical)
        lines.append(smiles)

    for seed in SEEDS:
        add(seed)
    for scaffold in SCAFFOLDS:
        for sub in SUBSTITUENTS:
            add(scaffold.replace("{X}", sub))
    # chain variations to fill out aliphatic diversity
    for n in range(1, 9):
        chain = "C" * n
        for cap in ("O", "N", "C(=O)O", "Cl", "C#N", "OC", "N(C)C", "S"):
            add(chain + cap)
    for n in range(2, 8):
        add("C" * n + "C(=O)" + "C" * n)
        add("O" + "C" * n + "O")
    # two-substituent aromatic combinations
    for a in SUBSTITUENTS[:12]:
        for b in SUBSTITUENTS[:12]:
            add(f"c1cc({a})ccc1{b}")
    for a in SUBSTITUENTS[:12]:
        for b in SUBSTITUENTS[:12]:
            add(f"c1cc({a})cnc1{b}")
    for a in SUBSTITUENTS[:10]:
        for b in SUBSTITUENTS[:10]:
            add(f"C1CCC({a})CC1{b}")
            add(f"c1csc({a})c1{b}")
    for a in SUBSTITUENTS[:8]:
        for b in SUBSTITUENTS[:8]:
            add(f"c1cc({a})cc({b})c1O")
            add(f"O=C(N{a})c1ccc({b})cc1")

    header = (
        "# Reference corpus: deterministic enumeration by tools/build_corpus.py\n"
        f"# {len(lines)} molecules, <= 30 heavy atoms, unique by canonical SMILES\n"
    )
    out_path.write_text(header + "\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} molecules to {out_path}")


if __name__ == "__main__":
    main()
