"""Generation interface: requests/results, the EVO backend, and the
remote-backend client."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Protocol

import requests

from ..errors import (
    BackendUnavailableError,
    EmptySeedPopulationError,
    MalformedResponseError,
    ParseError,
    UnknownCaseError,
    UnknownModelError,
)
from ..molcore.parser import parse_smiles
from ..molcore.writer import write_smiles
from ..predict.docking import stub_docking_score
from ..scoring.qed import qed
from ..scoring.sa import sa_score
from .evo import DEFAULT_WEIGHTS, EvoConfig, evolve

OVERSAMPLING = 10


@dataclass(frozen=True)
class GenerationRequest:
    case: str
    num: int
    model: str = "EVO"
    property_targets: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.num < 1:
            raise ValueError("num must be >= 1")
        if not self.case:
            raise ValueError("case must be non-empty")


@dataclass(frozen=True)
class GenerationResult:
    molecules: tuple[str, ...]
    generator: str
    seed: int | None
    valid_fraction: float
    exhausted: bool = False  # True when the oversampling budget ran out


class GenerationBackend(Protocol):
    name: str

    def generate(self, request: GenerationRequest) -> GenerationResult: ...


def fitness_from_pipeline(weights: dict, row) -> float:
    """Weighted sum of normalized desirabilities from a property row.

    ``row`` may be a mapping or any object with docking_score, ic50, sa
    and qed attributes.  Desirabilities: docking (−score−4)/6 clamped to
    [0,1]; ic50 label as-is; sa (10−sa)/9; qed as-is.
    """

    def get(name):
        if isinstance(row, dict):
            return row[name]
        return getattr(row, name)

    docking_d = min(1.0, max(0.0, (-get("docking_score") - 4.0) / 6.0))
    parts = {
        "docking": docking_d,
        "ic50": float(get("ic50")),
        "sa": (10.0 - get("sa")) / 9.0,
        "qed": get("qed"),
    }
    return sum(weights.get(k, 0.0) * v for k, v in parts.items())


def default_fitness(
    target: str = "", activity_model=None, weights: dict | None = None
) -> Callable[[str], float]:
    """SMILES -> scalar fitness via stub docking, SA, QED, and an optional
    activity model."""
    weights = weights or dict(DEFAULT_WEIGHTS)

    def fitness(smiles: str) -> float:
        mol = parse_smiles(smiles)
        row = {
            "docking_score": stub_docking_score(mol, target),
            "ic50": activity_model.predict(mol).label if activity_model else 0,
            "sa": sa_score(mol),
            "qed": qed(mol),
        }
        return fitness_from_pipeline(weights, row)

    return fitness


@dataclass
class TrainedCase:
    seed_population: tuple[str, ...]
    fragment_library: tuple[str, ...]
    target: str = ""
    description: str = ""


class EvoBackend:
    """Built-in evolutionary generator over per-case seed populations."""

    name = "EVO"

    def __init__(self, config: EvoConfig | None = None, case_free: bool = False):
        self.config = config or EvoConfig()
        self.case_free = case_free
        self.cases: dict[str, TrainedCase] = {}

    def register_case(self, case: str, trained: TrainedCase) -> None:
        self.cases[case] = trained

    def generate(self, request: GenerationRequest) -> GenerationResult:
        if request.case in self.cases:
            trained = self.cases[request.case]
        elif self.case_free:
            trained = TrainedCase(
                seed_population=("c1ccccc1", "CCO", "c1ccncc1", "CC(=O)N"),
                fragment_library=self.config.fragment_library,
            )
        else:
            raise UnknownCaseError(
                f"no trained generative model for case {request.case!r}"
            )
        budget = request.num * OVERSAMPLING
        config = EvoConfig(
            population_size=max(self.config.population_size, min(budget, 200)),
            generations=self.config.generations,
            elitism_count=self.config.elitism_count,
            mutation_rate=self.config.mutation_rate,
            crossover_rate=self.config.crossover_rate,
            seed=self.config.seed,
            fragment_library=trained.fragment_library,
            fitness_weights=self.config.fitness_weights,
            tournament_size=self.config.tournament_size,
            max_heavy_atoms=self.config.max_heavy_atoms,
        )
        fitness = default_fitness(trained.target, weights=config.fitness_weights)
        trace = evolve(config, list(trained.seed_population), fitness)
        unique: list[str] = []
        for smiles, _ in trace.final_population:
            if smiles not in unique:
                unique.append(smiles)
            if len(unique) >= request.num:
                break
        molecules = tuple(unique[: request.num])
        return GenerationResult(
            molecules=molecules,
            generator=self.name,
            seed=config.seed,
            valid_fraction=100.0,
            exhausted=len(molecules) < request.num,
        )


class RemoteBackend:
    """Client for an external generative service speaking the JSON wire
    format: POST {"case", "num", "model"} -> {"smiles": [...], "properties": {...}}."""

    def __init__(self, url: str, model_name: str, timeout: float = 60.0):
        self.url = url
        self.name = model_name
        self.timeout = timeout

    def generate(self, request: GenerationRequest) -> GenerationResult:
        payload = {"case": request.case, "num": request.num, "model": self.name}
        try:
            response = requests.post(self.url, json=payload, timeout=self.timeout)
        except requests.RequestException as exc:
            raise BackendUnavailableError(f"{self.url}: {exc}") from exc
        if response.status_code != 200:
            raise BackendUnavailableError(
                f"{self.url}: HTTP {response.status_code}"
            )
        try:
            data = response.json()
            smiles_list = data["smiles"]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedResponseError(
                f"expected JSON with a 'smiles' list, got: {response.text[:200]}"
            ) from exc
        if not isinstance(smiles_list, list):
            raise MalformedResponseError("'smiles' must be a list")
        valid = []
        for smiles in smiles_list:
            try:
                parse_smiles(smiles)
                valid.append(smiles)
            except ParseError:
                continue
        fraction = 100.0 * len(valid) / len(smiles_list) if smiles_list else 0.0
        return GenerationResult(
            molecules=tuple(valid[: request.num]),
            generator=self.name,
            seed=None,
            valid_fraction=fraction,
            exhausted=len(valid) < request.num,
        )


_REGISTRY: dict[str, GenerationBackend] = {}


def register_backend(backend: GenerationBackend) -> GenerationBackend:
    _REGISTRY[backend.name] = backend
    return backend


def register_remote_backend(url: str, model_name: str) -> RemoteBackend:
    if "://" not in url:
        raise ValueError(f"malformed URL: {url!r}")
    backend = RemoteBackend(url, model_name)
    register_backend(backend)
    return backend


def get_backend(model: str) -> GenerationBackend:
    if model not in _REGISTRY:
        raise UnknownModelError(
            f"unknown generator model {model!r}; registered: {sorted(_REGISTRY)}"
        )
    return _REGISTRY[model]


def generate(backend: GenerationBackend, request: GenerationRequest) -> GenerationResult:
    """Run one generation request; every returned SMILES parses."""
    result = backend.generate(request)
    checked = []
    for smiles in result.molecules:
        try:
            parse_smiles(smiles)
            checked.append(smiles)
        except ParseError:
            continue
    return GenerationResult(
        molecules=tuple(checked),
        generator=result.generator,
        seed=result.seed,
        valid_fraction=result.valid_fraction,
        exhausted=result.exhausted or len(checked) < request.num,
    )


def build_case_corpus_seed(
    corpus: list[str], fitness: Callable[[str], float], quantile: float = 0.5
) -> list[str]:
    """Top-fitness quantile of a case corpus, used as the initial EVO
    population."""
    if not corpus:
        raise EmptySeedPopulationError("case corpus is empty")
    canonical = []
    for smiles in corpus:
        try:
            canonical.append(write_smiles(parse_smiles(smiles)))
        except ParseError:
            continue
    if not canonical:
        raise EmptySeedPopulationError("case corpus has no valid molecules")
    ranked = sorted(canonical, key=fitness, reverse=True)
    keep = max(1, int(len(ranked) * quantile))
    return ranked[:keep]
