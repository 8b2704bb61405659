"""Built-in evolutionary molecule generator.

Tournament selection, crossover at acyclic single bonds, small graph
mutations (element swap, bond-order toggle, fragment append/delete), and
elitism.  Every offspring is round-tripped through the parser; invalid
structures are discarded and parents resampled.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable

from ..errors import EmptySeedPopulationError, ParseError
from ..molcore.graph import DOUBLE, SINGLE, Bond, Molecule
from ..molcore.parser import parse_smiles
from ..molcore.writer import _default_implicit_h, write_smiles

_SWAP_ELEMENTS = ("C", "N", "O", "S", "F", "Cl", "Br")

DEFAULT_FRAGMENTS = (
    "C", "CC", "O", "OC", "N", "NC", "F", "Cl", "C(=O)O", "C(=O)N",
    "C#N", "C(F)(F)F", "c1ccccc1", "c1ccncc1", "C1CCNCC1",
)

DEFAULT_WEIGHTS = {"docking": 1.0, "ic50": 1.0, "sa": 1.0, "qed": 1.0}


@dataclass(frozen=True)
class EvoConfig:
    population_size: int = 50
    generations: int = 20
    elitism_count: int = 2
    mutation_rate: float = 0.3
    crossover_rate: float = 0.7
    seed: int = 0
    fragment_library: tuple[str, ...] = DEFAULT_FRAGMENTS
    fitness_weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    tournament_size: int = 3
    max_heavy_atoms: int = 60

    def __post_init__(self):
        if not 0 <= self.mutation_rate <= 1 or not 0 <= self.crossover_rate <= 1:
            raise ValueError("rates must be in [0, 1]")
        if self.elitism_count >= self.population_size:
            raise ValueError("elitism_count must be < population_size")


@dataclass(frozen=True)
class GenerationStats:
    best_fitness: float
    mean_fitness: float


@dataclass(frozen=True)
class EvoTrace:
    stats: tuple[GenerationStats, ...]
    final_population: tuple[tuple[str, float], ...]  # sorted by fitness desc


def _rederive_h(mol: Molecule, indices: set[int]) -> None:
    for idx in indices:
        mol.set_atom(idx, explicit_h=0)
        mol.set_atom(idx, explicit_h=_default_implicit_h(mol, idx))


def _roundtrip(mol: Molecule) -> str | None:
    """Canonical SMILES if the edited graph is a valid molecule."""
    try:
        return write_smiles(parse_smiles(write_smiles(mol)))
    except (ParseError, KeyError, ValueError):
        return None


def _acyclic_single_bonds(mol: Molecule) -> list[int]:
    return [
        pos
        for pos, bond in enumerate(mol.bonds)
        if bond.order == SINGLE and not bond.ring_member
    ]


def _split(mol: Molecule, pos: int) -> tuple[list[int], list[int]]:
    """Atom index sets on each side of an acyclic bond."""
    bond = mol.bonds[pos]
    side_a = {bond.a}
    stack = [bond.a]
    while stack:
        cur = stack.pop()
        for nbr, b in mol.neighbors(cur):
            if b is bond or nbr in side_a:
                continue
            side_a.add(nbr)
            stack.append(nbr)
    side_b = [i for i in range(mol.n_atoms) if i not in side_a]
    return sorted(side_a), side_b


def crossover(parent1: Molecule, parent2: Molecule, rng: random.Random) -> str | None:
    cuts1 = _acyclic_single_bonds(parent1)
    cuts2 = _acyclic_single_bonds(parent2)
    if not cuts1 or not cuts2:
        return None
    pos1, pos2 = rng.choice(cuts1), rng.choice(cuts2)
    keep1, _ = _split(parent1, pos1)
    _, keep2 = _split(parent2, pos2)
    junction1 = parent1.bonds[pos1].a
    junction2 = parent2.bonds[pos2].b
    sub1 = parent1.subgraph(keep1)
    sub2 = parent2.subgraph(keep2)
    offset = sub1.n_atoms
    child = Molecule(
        atoms=list(sub1.atoms) + list(sub2.atoms),
        bonds=list(sub1.bonds)
        + [replace(b, a=b.a + offset, b=b.b + offset) for b in sub2.bonds],
    )
    j1 = keep1.index(junction1)
    j2 = keep2.index(junction2) + offset
    child.bonds.append(Bond(a=j1, b=j2, order=SINGLE))
    child._neighbors = None
    _rederive_h(child, {j1, j2})
    return _roundtrip(child)


def mutate(mol: Molecule, rng: random.Random, fragments: tuple[str, ...]) -> str | None:
    op = rng.choice(("element_swap", "bond_toggle", "fragment_append", "fragment_delete"))
    child = mol.copy()
    if op == "element_swap":
        candidates = [
            i
            for i, a in enumerate(child.atoms)
            if not a.aromatic and a.formal_charge == 0
        ]
        if not candidates:
            return None
        idx = rng.choice(candidates)
        current = child.atoms[idx].element
        choices = [e for e in _SWAP_ELEMENTS if e != current]
        child.set_atom(idx, element=rng.choice(choices), isotope=None)
        _rederive_h(child, {idx})
    elif op == "bond_toggle":
        candidates = [
            pos
            for pos, b in enumerate(child.bonds)
            if b.order in (SINGLE, DOUBLE)
            and not b.ring_member
            and not child.atoms[b.a].aromatic
            and not child.atoms[b.b].aromatic
        ]
        if not candidates:
            return None
        pos = rng.choice(candidates)
        bond = child.bonds[pos]
        child.set_bond(pos, order=DOUBLE if bond.order == SINGLE else SINGLE)
        _rederive_h(child, {bond.a, bond.b})
    elif op == "fragment_append":
        sites = [i for i, a in enumerate(child.atoms) if a.explicit_h >= 1]
        if not sites:
            return None
        site = rng.choice(sites)
        frag = parse_smiles(rng.choice(fragments))
        offset = child.n_atoms
        child.atoms.extend(frag.atoms)
        child.bonds.extend(
            replace(b, a=b.a + offset, b=b.b + offset) for b in frag.bonds
        )
        child.bonds.append(Bond(a=site, b=offset, order=SINGLE))
        child._neighbors = None
        _rederive_h(child, {site, offset})
    else:  # fragment_delete: drop the smaller side of an acyclic bond
        cuts = _acyclic_single_bonds(child)
        if not cuts:
            return None
        pos = rng.choice(cuts)
        side_a, side_b = _split(child, pos)
        keep = side_a if len(side_a) >= len(side_b) else side_b
        if len(keep) == child.n_atoms or not keep:
            return None
        junction = child.bonds[pos].a if child.bonds[pos].a in keep else child.bonds[pos].b
        j = keep.index(junction)
        child = child.subgraph(keep)
        _rederive_h(child, {j})
    return _roundtrip(child)


def _tournament(
    scored: list[tuple[str, float]], rng: random.Random, size: int
) -> str:
    picks = [scored[rng.randrange(len(scored))] for _ in range(size)]
    return max(picks, key=lambda item: item[1])[0]


def evolve(
    config: EvoConfig,
    seed_population: list[str],
    fitness: Callable[[str], float],
) -> EvoTrace:
    """Run the evolutionary loop; deterministic for a fixed config + seeds."""
    if not seed_population:
        raise EmptySeedPopulationError("seed population is empty")
    rng = random.Random(config.seed)

    def canonical_or_none(smiles: str) -> str | None:
        try:
            mol = parse_smiles(smiles)
        except ParseError:
            return None
        if mol.n_atoms > config.max_heavy_atoms:
            return None
        return write_smiles(mol)

    population = [c for c in (canonical_or_none(s) for s in seed_population) if c]
    if not population:
        raise EmptySeedPopulationError("no valid molecules in seed population")
    while len(population) < config.population_size:
        population.append(population[len(population) % len(population)])
    population = population[: config.population_size]

    cache: dict[str, float] = {}

    def score(smiles: str) -> float:
        if smiles not in cache:
            cache[smiles] = fitness(smiles)
        return cache[smiles]

    stats: list[GenerationStats] = []
    scored = sorted(
        ((s, score(s)) for s in population), key=lambda item: -item[1]
    )
    for _ in range(config.generations):
        nxt = [smiles for smiles, _ in scored[: config.elitism_count]]
        attempts = 0
        max_attempts = config.population_size * 20
        while len(nxt) < config.population_size and attempts < max_attempts:
            attempts += 1
            child: str | None = None
            if rng.random() < config.crossover_rate:
                p1 = parse_smiles(_tournament(scored, rng, config.tournament_size))
                p2 = parse_smiles(_tournament(scored, rng, config.tournament_size))
                child = crossover(p1, p2, rng)
            if child is None:
                child = _tournament(scored, rng, config.tournament_size)
            if rng.random() < config.mutation_rate:
                mutated = mutate(parse_smiles(child), rng, config.fragment_library)
                if mutated is not None:
                    child = mutated
            try:
                mol = parse_smiles(child)
            except ParseError:
                continue
            if mol.n_atoms > config.max_heavy_atoms:
                continue
            nxt.append(child)
        while len(nxt) < config.population_size:
            nxt.append(scored[0][0])
        scored = sorted(((s, score(s)) for s in nxt), key=lambda item: -item[1])
        fits = [f for _, f in scored]
        stats.append(
            GenerationStats(best_fitness=fits[0], mean_fitness=sum(fits) / len(fits))
        )
    return EvoTrace(stats=tuple(stats), final_population=tuple(scored))
