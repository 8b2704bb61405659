"""Molecule generation: built-in evolutionary generator and remote
generative-service backends."""

from .backends import (
    EvoBackend,
    GenerationRequest,
    GenerationResult,
    RemoteBackend,
    TrainedCase,
    build_case_corpus_seed,
    default_fitness,
    fitness_from_pipeline,
    generate,
    get_backend,
    register_backend,
    register_remote_backend,
)
from .evo import DEFAULT_FRAGMENTS, EvoConfig, EvoTrace, GenerationStats, evolve

__all__ = [
    "EvoBackend",
    "GenerationRequest",
    "GenerationResult",
    "RemoteBackend",
    "TrainedCase",
    "build_case_corpus_seed",
    "default_fitness",
    "fitness_from_pipeline",
    "generate",
    "get_backend",
    "register_backend",
    "register_remote_backend",
    "DEFAULT_FRAGMENTS",
    "EvoConfig",
    "EvoTrace",
    "GenerationStats",
    "evolve",
]
