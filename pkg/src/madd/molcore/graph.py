"""Attributed molecular graph: atoms, bonds, and the Molecule container."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .elements import atomic_weight

SINGLE = 1
DOUBLE = 2
TRIPLE = 3
AROMATIC = 4

_ORDER_VALUE = {SINGLE: 1.0, DOUBLE: 2.0, TRIPLE: 3.0, AROMATIC: 1.5}


@dataclass(frozen=True)
class Atom:
    element: str
    formal_charge: int = 0
    isotope: int | None = None
    aromatic: bool = False
    explicit_h: int = 0
    ring_member: bool = False
    # Stereo annotations are carried through parsing but ignored by
    # matching and descriptor code.
    stereo: str | None = None

    @property
    def weight(self) -> float:
        return atomic_weight(self.element, self.isotope)


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: int = SINGLE
    ring_member: bool = False
    stereo: str | None = None

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a

    @property
    def order_value(self) -> float:
        return _ORDER_VALUE[self.order]


@dataclass
class Molecule:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)
    fragment_count: int = 1
    source_smiles: str = ""
    perceived: bool = False

    def __post_init__(self):
        self._neighbors: list[list[tuple[int, Bond]]] | None = None

    # -- graph access -------------------------------------------------

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def neighbors(self, idx: int) -> list[tuple[int, Bond]]:
        """(neighbor index, bond) pairs for one atom."""
        if self._neighbors is None:
            table: list[list[tuple[int, Bond]]] = [[] for _ in self.atoms]
            for bond in self.bonds:
                table[bond.a].append((bond.b, bond))
                table[bond.b].append((bond.a, bond))
            self._neighbors = table
        return self._neighbors[idx]

    def degree(self, idx: int) -> int:
        return len(self.neighbors(idx))

    def bond_between(self, a: int, b: int) -> Bond | None:
        for nbr, bond in self.neighbors(a):
            if nbr == b:
                return bond
        return None

    def bond_order_sum(self, idx: int) -> float:
        return sum(bond.order_value for _, bond in self.neighbors(idx))

    def total_h(self, idx: int) -> int:
        atom = self.atoms[idx]
        return atom.explicit_h + sum(
            1 for nbr, _ in self.neighbors(idx) if self.atoms[nbr].element == "H"
        )

    def heavy_degree(self, idx: int) -> int:
        return sum(1 for nbr, _ in self.neighbors(idx) if self.atoms[nbr].element != "H")

    # -- mutation helpers (invalidate adjacency cache) -----------------

    def set_atom(self, idx: int, **changes) -> None:
        self.atoms[idx] = replace(self.atoms[idx], **changes)

    def set_bond(self, pos: int, **changes) -> None:
        self.bonds[pos] = replace(self.bonds[pos], **changes)
        self._neighbors = None

    def copy(self) -> "Molecule":
        mol = Molecule(
            atoms=list(self.atoms),
            bonds=list(self.bonds),
            fragment_count=self.fragment_count,
            source_smiles=self.source_smiles,
            perceived=self.perceived,
        )
        return mol

    # -- fragment handling --------------------------------------------

    def fragments(self) -> list[list[int]]:
        """Connected components as sorted atom index lists."""
        seen = [False] * self.n_atoms
        comps = []
        for start in range(self.n_atoms):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nbr, _ in self.neighbors(cur):
                    if not seen[nbr]:
                        seen[nbr] = True
                        stack.append(nbr)
            comps.append(sorted(comp))
        return comps

    def largest_fragment(self) -> "Molecule":
        """Sub-molecule of the heaviest connected component."""
        comps = self.fragments()
        if len(comps) <= 1:
            return self
        best = max(comps, key=lambda c: sum(self.atoms[i].weight for i in c))
        return self.subgraph(best)

    def subgraph(self, indices: list[int]) -> "Molecule":
        index_map = {old: new for new, old in enumerate(indices)}
        atoms = [self.atoms[i] for i in indices]
        bonds = [
            replace(b, a=index_map[b.a], b=index_map[b.b])
            for b in self.bonds
            if b.a in index_map and b.b in index_map
        ]
        return Molecule(
            atoms=atoms,
            bonds=bonds,
            fragment_count=1,
            source_smiles=self.source_smiles,
            perceived=self.perceived,
        )

    def molecular_formula_counts(self) -> dict[str, int]:
        """Element -> count, with hydrogens (explicit_h is already the
        resolved total hydrogen count from parsing)."""
        counts: dict[str, int] = {}
        for atom in self.atoms:
            counts[atom.element] = counts.get(atom.element, 0) + 1
            if atom.explicit_h:
                counts["H"] = counts.get("H", 0) + atom.explicit_h
        return counts
