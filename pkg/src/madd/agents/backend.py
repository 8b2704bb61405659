"""Chat-completion backends: OpenAI-compatible HTTP and a scripted mock.

The mock is an ordered list of (match substring, canned response) pairs;
entries are consumed in order, so a scripted conversation is fully
deterministic and offline.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol

import requests
import yaml

from ..errors import BackendUnavailableError


class ChatBackend(Protocol):
    def complete(self, messages: list[dict], temperature: float = 0.0) -> str: ...


@dataclass
class HttpChatBackend:
    base_url: str
    model: str
    api_key_env: str = "MADD_LLM_KEY"
    temperature: float = 0.0
    max_retries: int = 2
    timeout: float = 120.0

    def complete(self, messages: list[dict], temperature: float | None = None) -> str:
        url = self.base_url.rstrip("/") + "/chat/completions"
        headers = {"Content-Type": "application/json"}
        token = os.environ.get(self.api_key_env, "")
        if token:
            headers["Authorization"] = f"Bearer {token}"
        payload = {
            "model": self.model,
            "messages": messages,
            "temperature": self.temperature if temperature is None else temperature,
        }
        last_error: Exception | None = None
        for _ in range(self.max_retries + 1):
            try:
                response = requests.post(
                    url, json=payload, headers=headers, timeout=self.timeout
                )
                if response.status_code != 200:
                    last_error = BackendUnavailableError(
                        f"{url}: HTTP {response.status_code}"
                    )
                    continue
                return response.json()["choices"][0]["message"]["content"]
            except (requests.RequestException, KeyError, ValueError) as exc:
                last_error = exc
        raise BackendUnavailableError(f"chat backend failed: {last_error}")


@dataclass
class ScriptedMockBackend:
    """Deterministic mock: ordered (match substring, response) pairs."""

    script: list[tuple[str, str]]
    strict: bool = True
    _consumed: list[bool] = field(default_factory=list)
    transcript: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        if not self._consumed:
            self._consumed = [False] * len(self.script)

    def complete(self, messages: list[dict], temperature: float = 0.0) -> str:
        prompt = "\n".join(m.get("content", "") for m in messages)
        for i, (matcher, response) in enumerate(self.script):
            if self._consumed[i]:
                continue
            if matcher in prompt:
                self._consumed[i] = True
                self.transcript.append((prompt, response))
                return response
        if self.strict:
            raise BackendUnavailableError(
                f"scripted mock has no response for prompt: {prompt[:200]!r}"
            )
        return ""

    def reset(self) -> None:
        self._consumed = [False] * len(self.script)
        self.transcript.clear()

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedMockBackend":
        """Load a YAML/JSON script: list of {match: ..., response: ...}."""
        text = Path(path).read_text(encoding="utf-8")
        data = yaml.safe_load(text)
        if not isinstance(data, list):
            raise ValueError("script file must contain a list")
        script = [(entry["match"], entry["response"]) for entry in data]
        return cls(script=script)

    def to_file(self, path: str | Path) -> None:
        data = [{"match": m, "response": r} for m, r in self.script]
        Path(path).write_text(json.dumps(data, indent=2), encoding="utf-8")
