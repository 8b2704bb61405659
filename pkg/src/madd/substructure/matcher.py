"""Backtracking subgraph matching of SMARTS patterns against molecules."""

from __future__ import annotations

from ..molcore.graph import AROMATIC, DOUBLE, SINGLE, TRIPLE, Molecule
from ..molcore.perception import sssr
from .smarts import (
    B_ANY,
    B_AROMATIC,
    B_DEFAULT,
    B_DOUBLE,
    B_RING,
    B_SINGLE,
    B_TRIPLE,
    AtomPrimitive,
    QueryBond,
    SmartsPattern,
)


class _MolView:
    """Per-molecule caches shared by every atom test in one match call."""

    def __init__(self, mol: Molecule):
        self.mol = mol
        self.ring_sizes: list[set[int]] = [set() for _ in mol.atoms]
        for ring in sssr(mol):
            for idx in ring:
                self.ring_sizes[idx].add(len(ring))

    def total_h(self, idx: int) -> int:
        return self.mol.total_h(idx)

    def connections(self, idx: int) -> int:
        return self.mol.degree(idx) + self.mol.atoms[idx].explicit_h

    def valence(self, idx: int) -> int:
        import math

        return math.floor(self.mol.bond_order_sum(idx)) + self.mol.atoms[idx].explicit_h


def _atom_primitive_holds(view: _MolView, idx: int, prim: AtomPrimitive) -> bool:
    atom = view.mol.atoms[idx]
    kind, value = prim.kind, prim.value
    if kind == "any":
        result = True
    elif kind == "element":
        result = atom.element == value
    elif kind == "element_aliphatic":
        result = atom.element == value and not atom.aromatic
    elif kind == "element_aromatic":
        result = atom.element == value and atom.aromatic
    elif kind == "aromatic":
        result = atom.aromatic == value
    elif kind == "charge":
        result = atom.formal_charge == value
    elif kind == "isotope":
        result = atom.isotope == value
    elif kind == "degree":
        result = view.mol.degree(idx) == value
    elif kind == "hcount":
        result = view.total_h(idx) == value
    elif kind == "connections":
        result = view.connections(idx) == value
    elif kind == "ring_member":
        result = bool(view.ring_sizes[idx]) == value
    elif kind == "ring_size":
        result = value in view.ring_sizes[idx]
    elif kind == "valence":
        result = view.valence(idx) == value
    else:  # pragma: no cover - parser only emits the kinds above
        raise AssertionError(f"unknown primitive kind {kind!r}")
    return result != prim.negated


def _atom_matches(view: _MolView, idx: int, terms: list[list[AtomPrimitive]]) -> bool:
    return any(
        all(_atom_primitive_holds(view, idx, p) for p in term) for term in terms
    )


def _bond_matches(view: _MolView, a: int, b: int, qb: QueryBond) -> bool:
    bond = view.mol.bond_between(a, b)
    if bond is None:
        return False
    kind = qb.kind
    if kind == B_ANY:
        return True
    if kind == B_RING:
        return bond.ring_member
    if kind == B_DEFAULT:
        return bond.order in (SINGLE, AROMATIC)
    if kind == B_SINGLE:
        return bond.order == SINGLE
    if kind == B_DOUBLE:
        return bond.order == DOUBLE
    if kind == B_TRIPLE:
        return bond.order == TRIPLE
    if kind == B_AROMATIC:
        return bond.order == AROMATIC
    raise AssertionError(f"unknown bond kind {kind!r}")  # pragma: no cover


def _query_order(pattern: SmartsPattern) -> list[int]:
    """Query atom visit order where each atom (after the first) touches an
    earlier one."""
    order = [0]
    placed = {0}
    while len(order) < pattern.n_atoms:
        for qb in pattern.query_bonds:
            for a, b in ((qb.a, qb.b), (qb.b, qb.a)):
                if a in placed and b not in placed:
                    order.append(b)
                    placed.add(b)
                    break
            else:
                continue
            break
    return order


def find_matches(
    mol: Molecule, pattern: SmartsPattern, limit: int | None = None
) -> list[dict[int, int]]:
    """All distinct match mappings (query atom -> molecule atom).

    Mappings whose image (the set of matched molecule atoms) repeats an
    earlier mapping are collapsed, so automorphic rings count once.
    """
    view = _MolView(mol)
    order = _query_order(pattern)
    # query bonds to already-placed atoms, per visit position
    checks: list[list[tuple[int, QueryBond]]] = []
    placed: set[int] = set()
    for q in order:
        step = []
        for qb in pattern.query_bonds:
            other = None
            if qb.a == q and qb.b in placed:
                other = qb.b
            elif qb.b == q and qb.a in placed:
                other = qb.a
            if other is not None:
                step.append((other, qb))
        checks.append(step)
        placed.add(q)

    results: list[dict[int, int]] = []
    images: set[frozenset[int]] = set()
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(depth: int) -> bool:
        if depth == len(order):
            image = frozenset(mapping.values())
            if image not in images:
                images.add(image)
                results.append(dict(mapping))
            return limit is not None and len(results) >= limit
        q = order[depth]
        anchored = checks[depth]
        if anchored:
            candidates = [
                nbr
                for nbr, _ in view.mol.neighbors(mapping[anchored[0][0]])
                if nbr not in used
            ]
        else:
            candidates = [i for i in range(mol.n_atoms) if i not in used]
        for cand in candidates:
            if not _atom_matches(view, cand, pattern.query_atoms[q].terms):
                continue
            if not all(
                _bond_matches(view, cand, mapping[other], qb) for other, qb in anchored
            ):
                continue
            mapping[q] = cand
            used.add(cand)
            if backtrack(depth + 1):
                return True
            del mapping[q]
            used.discard(cand)
        return False

    backtrack(0)
    return results


def match(mol: Molecule, pattern: SmartsPattern) -> int:
    """Count distinct match images of ``pattern`` in ``mol`` (0 = no hit)."""
    return len(find_matches(mol, pattern))


def has_match(mol: Molecule, pattern: SmartsPattern) -> bool:
    return bool(find_matches(mol, pattern, limit=1))


class MatchContext:
    """Reusable per-molecule matching state for repeated atom typing.

    Builds the ring caches once; ``match_at`` then answers whether some
    mapping sends a pattern's first atom to a given molecule atom.  Used
    for first-match-wins contribution tables (logP).
    """

    def __init__(self, mol: Molecule):
        self.view = _MolView(mol)

    def match_at(self, pattern: SmartsPattern, root: int) -> bool:
        if not _atom_matches(self.view, root, pattern.query_atoms[0].terms):
            return False
        return _anchored_match(self.view, pattern, root)


def match_at(mol: Molecule, pattern: SmartsPattern, root: int) -> bool:
    """True if some mapping sends the pattern's first atom to ``root``."""
    return MatchContext(mol).match_at(pattern, root)


def _anchored_match(view: _MolView, pattern: SmartsPattern, root: int) -> bool:
    order = _query_order(pattern)
    mapping = {0: root}
    used = {root}

    def backtrack(depth: int) -> bool:
        if depth == len(order):
            return True
        q = order[depth]
        anchored = [
            (other, qb)
            for qb in pattern.query_bonds
            for other in ((qb.b if qb.a == q else qb.a),)
            if (qb.a == q or qb.b == q) and other in mapping
        ]
        if anchored:
            candidates = [
                nbr
                for nbr, _ in view.mol.neighbors(mapping[anchored[0][0]])
                if nbr not in used
            ]
        else:
            candidates = [i for i in range(view.mol.n_atoms) if i not in used]
        for cand in candidates:
            if not _atom_matches(view, cand, pattern.query_atoms[q].terms):
                continue
            if not all(
                _bond_matches(view, cand, mapping[other], qb) for other, qb in anchored
            ):
                continue
            mapping[q] = cand
            used.add(cand)
            if backtrack(depth + 1):
                return True
            del mapping[q]
            used.discard(cand)
        return False

    return backtrack(1)
