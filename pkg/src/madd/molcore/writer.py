"""Canonical SMILES writer.

Canonical atom ranks come from iterative Morgan-style refinement of atom
invariants, with ties broken by breadth-first shell signatures.  Output is
a deterministic depth-first traversal rooted at the lowest-ranked atom,
so any two atom orderings of the same molecular graph produce the same
string.  Stereo annotations are dropped (they carry no semantics in this
package).
"""

from __future__ import annotations

from collections import deque

from .elements import ORGANIC_SUBSET
from .graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule
from .parser import _valences

_BOND_TOKEN = {SINGLE: "", DOUBLE: "=", TRIPLE: "#"}

# Aromatic symbols that may be written without brackets.
_BARE_AROMATIC = {"B", "C", "N", "O", "P", "S"}


def canonical_ranks(mol: Molecule) -> list[int]:
    """A discrete canonical ordering of atoms (0 = first)."""
    n = mol.n_atoms
    invariants = [
        (
            a.element,
            a.aromatic,
            a.formal_charge,
            a.isotope or 0,
            mol.degree(i),
            a.explicit_h,
        )
        for i, a in enumerate(mol.atoms)
    ]
    ranks = _ranks_from(invariants)
    ranks = _refine(mol, ranks)
    while len(set(ranks)) < n:
        tied_rank = min(r for r in ranks if ranks.count(r) > 1)
        tied = [i for i in range(n) if ranks[i] == tied_rank]
        chosen = min(tied, key=lambda i: _shell_signature(mol, i, ranks))
        scaled = [r * 2 for r in ranks]
        scaled[chosen] -= 1
        ranks = _refine(mol, _ranks_from(scaled))
    return ranks


def _ranks_from(keys: list) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


def _refine(mol: Molecule, ranks: list[int]) -> list[int]:
    while True:
        keys = [
            (
                ranks[i],
                tuple(sorted((b.order, ranks[nbr]) for nbr, b in mol.neighbors(i))),
            )
            for i in range(mol.n_atoms)
        ]
        new_ranks = _ranks_from(keys)
        if len(set(new_ranks)) == len(set(ranks)):
            return new_ranks
        ranks = new_ranks


def _shell_signature(mol: Molecule, start: int, ranks: list[int]) -> tuple:
    """Sorted rank multisets of successive BFS shells around one atom."""
    seen = {start}
    frontier = [start]
    shells = []
    while frontier:
        nxt = []
        for i in frontier:
            for nbr, _ in mol.neighbors(i):
                if nbr not in seen:
                    seen.add(nbr)
                    nxt.append(nbr)
        if nxt:
            shells.append(tuple(sorted(ranks[i] for i in nxt)))
        frontier = nxt
    return tuple(shells)


def _default_implicit_h(mol: Molecule, idx: int) -> int:
    """Hydrogen count the parser would infer for a bracket-free atom."""
    import math

    atom = mol.atoms[idx]
    if atom.aromatic and atom.element not in ("C", "N"):
        return 0
    bond_sum = math.ceil(mol.bond_order_sum(idx))
    candidates = _valences(atom.element, atom.formal_charge)
    if atom.aromatic:
        candidates = candidates[:1]
    for v in candidates:
        if v >= bond_sum:
            return v - bond_sum
    return 0


def _atom_token(mol: Molecule, idx: int) -> str:
    atom = mol.atoms[idx]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    bare_ok = (
        atom.isotope is None
        and atom.formal_charge == 0
        and atom.element in ORGANIC_SUBSET
        and (not atom.aromatic or atom.element in _BARE_AROMATIC)
        and atom.explicit_h == _default_implicit_h(mol, idx)
    )
    if bare_ok:
        return symbol
    parts = ["["]
    if atom.isotope is not None:
        parts.append(str(atom.isotope))
    parts.append(symbol)
    if atom.explicit_h == 1:
        parts.append("H")
    elif atom.explicit_h > 1:
        parts.append(f"H{atom.explicit_h}")
    q = atom.formal_charge
    if q == 1:
        parts.append("+")
    elif q == -1:
        parts.append("-")
    elif q > 1:
        parts.append(f"+{q}")
    elif q < -1:
        parts.append(str(q))
    parts.append("]")
    return "".join(parts)


def _bond_token(mol: Molecule, a: int, b: int, order: int) -> str:
    if order == AROMATIC:
        return "" if mol.atoms[a].aromatic and mol.atoms[b].aromatic else ":"
    if order == SINGLE and mol.atoms[a].aromatic and mol.atoms[b].aromatic:
        return "-"
    return _BOND_TOKEN[order]


def _write_fragment(mol: Molecule, ranks: list[int], root: int) -> str:
    # spanning-tree DFS; back edges become ring closures
    visited = {root}
    tree: dict[int, list[int]] = {i: [] for i in range(mol.n_atoms)}
    back_edges: list[tuple[int, int]] = []
    stack = [root]
    parent = {root: None}
    order_by_rank = lambda pair: ranks[pair[0]]
    # iterative DFS that respects canonical neighbor order
    while stack:
        cur = stack[-1]
        advanced = False
        for nbr, bond in sorted(mol.neighbors(cur), key=order_by_rank):
            if nbr == parent.get(cur):
                continue
            if nbr in visited:
                edge = (min(cur, nbr), max(cur, nbr))
                if edge not in back_edges and nbr not in tree[cur] and cur not in tree[nbr]:
                    back_edges.append(edge)
                continue
            visited.add(nbr)
            parent[nbr] = cur
            tree[cur].append(nbr)
            stack.append(nbr)
            advanced = True
            break
        if not advanced:
            stack.pop()

    # ring-closure digit assignment, reusing freed digits
    closure_pairs: dict[int, list[tuple[int, int]]] = {}
    for a, b in back_edges:
        closure_pairs.setdefault(a, []).append((b, a))
        closure_pairs.setdefault(b, []).append((a, b))
    digits: dict[tuple[int, int], int] = {}
    in_use: set[int] = set()

    def closure_digit(edge: tuple[int, int]) -> tuple[int, bool]:
        if edge in digits:
            d = digits.pop(edge)
            in_use.discard(d)
            return d, False
        d = next(i for i in range(1, 100) if i not in in_use)
        in_use.add(d)
        digits[edge] = d
        return d, True

    out: list[str] = []

    def emit(idx: int, from_atom: int | None) -> None:
        if from_atom is not None:
            bond = mol.bond_between(from_atom, idx)
            out.append(_bond_token(mol, from_atom, idx, bond.order))
        out.append(_atom_token(mol, idx))
        for other, _ in sorted(closure_pairs.get(idx, ()), key=lambda p: ranks[p[0]]):
            edge = (min(idx, other), max(idx, other))
            digit, first = closure_digit(edge)
            if not first:
                bond = mol.bond_between(idx, other)
                out.append(_bond_token(mol, idx, other, bond.order))
            out.append(str(digit) if digit < 10 else f"%{digit:02d}")
        children = sorted(tree[idx], key=lambda c: ranks[c])
        for i, child in enumerate(children):
            last = i == len(children) - 1
            if not last:
                out.append("(")
            emit(child, idx)
            if not last:
                out.append(")")

    emit(root, None)
    return "".join(out)


def write_smiles(mol: Molecule) -> str:
    """Canonical SMILES for a (perceived) molecule."""
    comps = mol.fragments()
    if len(comps) > 1:
        parts = sorted(write_smiles(mol.subgraph(comp)) for comp in comps)
        return ".".join(parts)
    ranks = canonical_ranks(mol)
    root = ranks.index(min(ranks))
    return _write_fragment(mol, ranks, root)
