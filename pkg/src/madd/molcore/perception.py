"""Ring perception (smallest set of smallest rings) and aromaticity.

Aromaticity model: a ring is aromatic iff every member is sp2-compatible
and the ring's pi-electron count satisfies Hueckel's 4n+2 rule.  Pi
contributions per in-ring atom:

    C with a double/aromatic bond to a ring neighbor    1
    C with an exocyclic double bond                     0
    C- (carbanion)                                      2
    C+                                                  0
    N/P with an in-ring double bond (pyridine-like)     1
    N/P with three sigma connections (pyrrole-like)     2
    N with an exocyclic double bond (N-oxide etc.)      1
    O, S, Se (two sigma ring bonds)                     2

Atoms with triple bonds, more than three connections, or sp3 carbons
disqualify the ring.  Rings already written in aromatic (lowercase) form
are kept aromatic as given.
"""

from __future__ import annotations

from collections import deque

from .graph import AROMATIC, DOUBLE, TRIPLE, Molecule

_AROMATIC_CAPABLE = {"C", "N", "O", "S", "P", "Se", "B", "As"}


def _adjacency(mol: Molecule) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(mol.n_atoms)]
    for bond in mol.bonds:
        adj[bond.a].append(bond.b)
        adj[bond.b].append(bond.a)
    for nbrs in adj:
        nbrs.sort()
    return adj


def _cycle_rank(mol: Molecule, adj: list[list[int]]) -> int:
    seen = [False] * mol.n_atoms
    components = 0
    for start in range(mol.n_atoms):
        if seen[start]:
            continue
        components += 1
        stack = [start]
        seen[start] = True
        while stack:
            cur = stack.pop()
            for nbr in adj[cur]:
                if not seen[nbr]:
                    seen[nbr] = True
                    stack.append(nbr)
    return len(mol.bonds) - mol.n_atoms + components


def _shortest_cycle_through(adj, u: int, v: int) -> list[int] | None:
    """Shortest cycle containing edge (u, v): BFS u -> v avoiding the edge."""
    prev = {u: -1}
    queue = deque([u])
    while queue:
        cur = queue.popleft()
        if cur == v:
            path = []
            while cur != -1:
                path.append(cur)
                cur = prev[cur]
            return path
        for nbr in adj[cur]:
            if nbr in prev or (cur == u and nbr == v):
                continue
            prev[nbr] = cur
            queue.append(nbr)
    return None


def _canonical_cycle(path: list[int]) -> list[int]:
    """Rotate/orient a cycle: smallest atom first, smaller neighbor next."""
    k = path.index(min(path))
    rotated = path[k:] + path[:k]
    if len(rotated) > 2 and rotated[-1] < rotated[1]:
        rotated = [rotated[0]] + rotated[:0:-1]
    return rotated


def sssr(mol: Molecule) -> list[list[int]]:
    """Smallest set of smallest rings, each as an ordered atom cycle.

    Candidate rings are the shortest cycles through each ring bond; a
    greedy pass keeps candidates whose edge sets are linearly
    independent over GF(2) until the cycle rank is reached.
    """
    adj = _adjacency(mol)
    rank = _cycle_rank(mol, adj)
    if rank == 0:
        return []
    edge_index = {
        frozenset((b.a, b.b)): i for i, b in enumerate(mol.bonds)
    }
    candidates: dict[frozenset, list[int]] = {}
    for bond in mol.bonds:
        path = _shortest_cycle_through(adj, bond.a, bond.b)
        if path is None:
            continue
        cycle = _canonical_cycle(path)
        key = frozenset(cycle)
        if key not in candidates or len(cycle) < len(candidates[key]):
            candidates[key] = cycle
    ordered = sorted(candidates.values(), key=lambda c: (len(c), c))

    rings: list[list[int]] = []
    basis: dict[int, int] = {}  # leading bit -> GF(2) edge-incidence vector
    for cycle in ordered:
        vector = 0
        for i in range(len(cycle)):
            pos = edge_index[frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))]
            vector |= 1 << pos
        reduced = vector
        while reduced:
            lead = reduced.bit_length() - 1
            if lead not in basis:
                basis[lead] = reduced
                rings.append(cycle)
                break
            reduced ^= basis[lead]
        if len(rings) == rank:
            break
    rings.sort(key=lambda r: (len(r), r))
    return rings


def _ring_bond_positions(mol: Molecule, ring: list[int]) -> list[int]:
    pairs = {frozenset((ring[i], ring[(i + 1) % len(ring)])) for i in range(len(ring))}
    return [i for i, b in enumerate(mol.bonds) if frozenset((b.a, b.b)) in pairs]


def _pi_contribution(mol: Molecule, idx: int, ring: set[int]) -> int | None:
    """Pi electrons contributed by one ring atom, or None if it blocks
    aromaticity."""
    atom = mol.atoms[idx]
    if atom.element not in _AROMATIC_CAPABLE:
        return None
    connections = mol.degree(idx) + atom.explicit_h
    if connections > 3:
        return None
    in_ring_double = False
    exo_double = False
    for nbr, bond in mol.neighbors(idx):
        if bond.order == TRIPLE:
            return None
        if bond.order in (DOUBLE, AROMATIC):
            if nbr in ring:
                in_ring_double = True
            else:
                exo_double = True
    el, q = atom.element, atom.formal_charge
    if el == "C":
        if q == -1 and not (in_ring_double or exo_double):
            return 2
        if in_ring_double:
            return 1
        if exo_double or q == 1:
            return 0
        return None  # sp3 carbon
    if el in ("N", "P", "As"):
        if in_ring_double:
            return 1
        if exo_double:
            return 1
        return 2  # lone pair in the ring plane is not donated; pyrrole-like
    if el in ("O", "S", "Se"):
        if in_ring_double or exo_double:
            return None if el == "O" else 0
        return 2
    if el == "B":
        return 0 if not (in_ring_double or exo_double) else 1
    return None


def perceive(mol: Molecule) -> Molecule:
    """Annotate ring membership and aromaticity.  Idempotent."""
    out = mol.copy()
    rings = sssr(out)

    ring_atoms = {i for ring in rings for i in ring}
    ring_bonds = set()
    for ring in rings:
        ring_bonds.update(_ring_bond_positions(out, ring))

    for i in range(out.n_atoms):
        out.set_atom(i, ring_member=i in ring_atoms)
    for pos in range(len(out.bonds)):
        out.set_bond(pos, ring_member=pos in ring_bonds)

    for ring in rings:
        if not 3 <= len(ring) <= 7:
            continue
        ring_set = set(ring)
        positions = _ring_bond_positions(out, ring)
        already = all(out.atoms[i].aromatic for i in ring) and all(
            out.bonds[p].order == AROMATIC for p in positions
        )
        if already:
            continue
        contributions = [_pi_contribution(out, i, ring_set) for i in ring]
        if any(c is None for c in contributions):
            continue
        pi = sum(contributions)
        if pi % 4 != 2:
            continue
        for i in ring:
            out.set_atom(i, aromatic=True)
        for pos in positions:
            out.set_bond(pos, order=AROMATIC)

    # demote stray aromatic flags on atoms that ended up outside any ring
    for i, atom in enumerate(out.atoms):
        if atom.aromatic and i not in ring_atoms:
            out.set_atom(i, aromatic=False)

    out.perceived = True
    return out


def ring_count(mol: Molecule) -> int:
    return len(sssr(mol))


def aromatic_ring_count(mol: Molecule) -> int:
    rings = sssr(mol)
    count = 0
    for ring in rings:
        if all(mol.atoms[i].aromatic for i in ring) and all(
            mol.bonds[p].order == AROMATIC for p in _ring_bond_positions(mol, ring)
        ):
            count += 1
    return count
