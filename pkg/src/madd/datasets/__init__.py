"""DatasetBuilder: bioactivity fetch clients and case-corpus building."""

from .client import (
    MEASURES,
    UNIT_TO_NM,
    AffinityRecord,
    BindingDbClient,
    ChemblClient,
    fetch,
    normalize_to_nm,
)
from .corpus import CorpusBuildResult, CorpusSpec, build_corpus, preprocess

__all__ = [
    "MEASURES",
    "UNIT_TO_NM",
    "AffinityRecord",
    "BindingDbClient",
    "ChemblClient",
    "fetch",
    "normalize_to_nm",
    "CorpusBuildResult",
    "CorpusSpec",
    "build_corpus",
    "preprocess",
]
