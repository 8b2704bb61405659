"""Tool registry: specs, call validation, and the trained-models
dictionary."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Any, Callable

from ..errors import SchemaViolationError, UnknownToolError

_TYPE_TAGS = {
    "str": str,
    "int": int,
    "float": (int, float),
    "bool": bool,
    "list": list,
}


@dataclass(frozen=True)
class ToolArgument:
    name: str
    type: str  # one of str, int, float, bool, list
    description: str = ""
    default: Any = None
    required: bool = False

    def __post_init__(self):
        if self.type not in _TYPE_TAGS:
            raise ValueError(f"unknown argument type {self.type!r}")


@dataclass(frozen=True)
class ToolSpec:
    name: str
    description: str
    arguments: tuple[ToolArgument, ...]
    handler: Callable[..., Any]

    def validate(self, parameters: dict) -> dict:
        """Check parameters against the schema; returns them with
        defaults filled in."""
        known = {arg.name: arg for arg in self.arguments}
        for key, value in parameters.items():
            if key not in known:
                raise SchemaViolationError(
                    f"tool {self.name!r}: unexpected parameter {key!r}"
                )
            expected = _TYPE_TAGS[known[key].type]
            if isinstance(value, bool) and known[key].type in ("int", "float"):
                raise SchemaViolationError(
                    f"tool {self.name!r}: parameter {key!r} must be {known[key].type}"
                )
            if not isinstance(value, expected):
                raise SchemaViolationError(
                    f"tool {self.name!r}: parameter {key!r} must be "
                    f"{known[key].type}, got {type(value).__name__}"
                )
        resolved = dict(parameters)
        for arg in self.arguments:
            if arg.name not in resolved:
                if arg.required:
                    raise SchemaViolationError(
                        f"tool {self.name!r}: missing required parameter {arg.name!r}"
                    )
                if arg.default is not None:
                    resolved[arg.name] = arg.default
        return resolved

    def render(self) -> str:
        """Prompt text block for this tool, in the inline dictionary style."""
        lines = [f"name: {self.name},", f"description: {self.description},", "arguments:"]
        for arg in self.arguments:
            lines.append(f"  name: {arg.name},")
            lines.append(f"  type: {arg.type},")
            lines.append(f"  description: {arg.description}")
            if arg.default is not None:
                lines.append(f"  default: {arg.default}")
        return "\n".join(lines)


@dataclass(frozen=True)
class ToolCall:
    name: str
    parameters: dict


class ToolRegistry:
    def __init__(self):
        self._specs: dict[str, ToolSpec] = {}

    def register(self, spec: ToolSpec) -> None:
        if spec.name in self._specs:
            raise ValueError(f"duplicate tool name {spec.name!r}")
        self._specs[spec.name] = spec

    def get(self, name: str) -> ToolSpec:
        if name not in self._specs:
            raise UnknownToolError(
                f"unknown tool {name!r}; registered: {sorted(self._specs)}"
            )
        return self._specs[name]

    def __contains__(self, name: str) -> bool:
        return name in self._specs

    def __len__(self) -> int:
        return len(self._specs)

    def names(self) -> list[str]:
        return sorted(self._specs)

    def render(self) -> str:
        return "\n\n".join(self._specs[n].render() for n in sorted(self._specs))

    def dispatch(self, call: ToolCall) -> Any:
        spec = self.get(call.name)
        parameters = spec.validate(call.parameters)
        return spec.handler(**parameters)


class TrainedModelsDict:
    """case key -> description; grows monotonically within a run."""

    def __init__(self, entries: dict[str, str] | None = None):
        self._entries = dict(entries or {})
        self._lock = threading.Lock()

    def add(self, case: str, description: str) -> None:
        with self._lock:
            self._entries[case] = description

    def __contains__(self, case: str) -> bool:
        return case in self._entries

    def snapshot(self) -> dict[str, str]:
        with self._lock:
            return dict(self._entries)

    def render(self) -> str:
        parts = [
            f"name: {case},\ndescription: {desc}"
            for case, desc in sorted(self.snapshot().items())
        ]
        return "\n\n".join(parts) if parts else "(no trained generative models)"
