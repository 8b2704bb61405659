"""Docking-score providers: a deterministic stub and an external-command
adapter.

The stub score is a synthetic stand-in, monotone in molecular size and
aromaticity so downstream gating is exercisable; it is not chemistry.
"""

from __future__ import annotations

import re
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ExternalCommandFailedError, ParseFailureError
from ..molcore.descriptors import mol_weight
from ..molcore.graph import Molecule
from ..molcore.perception import aromatic_ring_count
from ..molcore.writer import write_smiles

_BEST_AFFINITY = re.compile(r"best affinity[^-+0-9]*(-?\d+(?:\.\d+)?)", re.IGNORECASE)


def _fnv1a(text: str) -> int:
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


@dataclass(frozen=True)
class DockingProvider:
    """kind is ``stub`` (deterministic formula) or ``external_command``."""

    kind: str = "stub"
    receptor: str = ""
    command: tuple[str, ...] = ()  # template with {smiles_file} {receptor} {out_file}
    box: tuple[float, ...] = ()
    seed: int = 0
    timeout: float = 300.0
    _extra: dict = field(default_factory=dict, compare=False)

    def score(self, mol: Molecule, target: str = "") -> float:
        target = target or self.receptor
        if self.kind == "stub":
            return stub_docking_score(mol, target, seed=self.seed)
        if self.kind == "external_command":
            return self._score_external(mol, target)
        raise ValueError(f"unknown provider kind {self.kind!r}")

    def _score_external(self, mol: Molecule, target: str) -> float:
        with tempfile.TemporaryDirectory() as tmp:
            smiles_file = Path(tmp) / "ligand.smi"
            out_file = Path(tmp) / "out.txt"
            smiles_file.write_text(write_smiles(mol) + "\n", encoding="utf-8")
            argv = [
                part.format(
                    smiles_file=smiles_file, receptor=target, out_file=out_file
                )
                for part in self.command
            ]
            try:
                proc = subprocess.run(
                    argv, capture_output=True, text=True, timeout=self.timeout
                )
            except (OSError, subprocess.TimeoutExpired) as exc:
                raise ExternalCommandFailedError(str(exc)) from exc
            if proc.returncode != 0:
                raise ExternalCommandFailedError(
                    f"docking command exited {proc.returncode}",
                    exit_code=proc.returncode,
                    stderr=proc.stderr,
                )
            text = proc.stdout
            if out_file.exists():
                text += "\n" + out_file.read_text(encoding="utf-8")
            return parse_best_affinity(text)


def stub_docking_score(mol: Molecule, target: str = "", seed: int = 0) -> float:
    """Deterministic pseudo-score in [-14, 0] kcal/mol.

    base -4.0 - 0.004*MW - 0.3*aromatic_rings + hash jitter in [-0.5, 0.5],
    keyed by (canonical SMILES, target, seed).
    """
    canonical = write_smiles(mol)
    jitter_hash = _fnv1a(f"{canonical}|{target}|{seed}")
    jitter = (jitter_hash / 0xFFFFFFFFFFFFFFFF) - 0.5
    score = -4.0 - 0.004 * mol_weight(mol) - 0.3 * aromatic_ring_count(mol) + jitter
    return min(0.0, max(-14.0, score))


def parse_best_affinity(text: str) -> float:
    """Extract the best pose energy from a docking transcript.

    Looks for a "best affinity" line; raises ParseFailureError otherwise.
    """
    match = _BEST_AFFINITY.search(text)
    if not match:
        raise ParseFailureError("no 'best affinity' line in docking output")
    return float(match.group(1))
