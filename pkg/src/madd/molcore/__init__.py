"""Molecule parsing, perception, serialization, and descriptors."""

from .descriptors import DescriptorSet, descriptors
from .graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Atom, Bond, Molecule
from .parser import parse_smiles
from .perception import aromatic_ring_count, perceive, ring_count, sssr
from .validity import ValidityReport, check_validity
from .writer import write_smiles

__all__ = [
    "AROMATIC",
    "DOUBLE",
    "SINGLE",
    "TRIPLE",
    "Atom",
    "Bond",
    "DescriptorSet",
    "Molecule",
    "ValidityReport",
    "aromatic_ring_count",
    "check_validity",
    "descriptors",
    "parse_smiles",
    "perceive",
    "ring_count",
    "sssr",
    "write_smiles",
]
