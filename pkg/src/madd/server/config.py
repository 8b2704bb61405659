"""Service configuration with CLI > environment > file precedence."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

import yaml

_ENV_KEYS = {
    "llm_base": "MADD_LLM_BASE",
    "llm_key_env": None,  # the key itself stays in MADD_LLM_KEY
    "llm_model": "MADD_LLM_MODEL",
}


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8000
    llm_base: str = ""
    llm_model: str = ""
    llm_key_env: str = "MADD_LLM_KEY"
    thresholds_path: str = ""
    catalog_paths: dict = field(default_factory=dict)
    workers: int = 2
    audit_path: str = ""

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be >= 1")


def load_config(cli_overrides: dict | None = None, config_path: str | None = None) -> ServiceConfig:
    """Merge file < environment < CLI flags."""
    values: dict = {}
    path = config_path or os.environ.get("MADD_CONFIG", "")
    if path and Path(path).exists():
        data = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        known = {f.name for f in fields(ServiceConfig)}
        values.update({k: v for k, v in data.items() if k in known})
    for key, env in _ENV_KEYS.items():
        if env and os.environ.get(env):
            values[key] = os.environ[env]
    for key, value in (cli_overrides or {}).items():
        if value is not None:
            values[key] = value
    return ServiceConfig(**values)
