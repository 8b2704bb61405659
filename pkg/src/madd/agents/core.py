"""The four agents: Decomposer, Orchestrator, Summarizer, and Chat.

All agents speak to an abstract chat-completion backend; prompts are
shipped as text assets under ``madd/agents/prompts``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from ..errors import (
    BackendUnavailableError,
    IncompleteAnswerError,
    MalformedPlanError,
    MalformedResponseError,
)
from .backend import ChatBackend
from .tools import ToolCall, ToolRegistry, TrainedModelsDict

_JSON_BLOCK = re.compile(r"\{.*\}", re.DOTALL)


@lru_cache(maxsize=None)
def load_prompt(name: str) -> str:
    ref = resources.files("madd.agents.prompts") / f"{name}.txt"
    return ref.read_text(encoding="utf-8")


def _extract_json(text: str) -> dict:
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    match = _JSON_BLOCK.search(text)
    if not match:
        raise MalformedResponseError(f"no JSON object in backend reply: {text[:200]!r}")
    try:
        return json.loads(match.group(0))
    except json.JSONDecodeError as exc:
        raise MalformedResponseError(
            f"invalid JSON in backend reply: {text[:200]!r}"
        ) from exc


# -- Decomposer --------------------------------------------------------


@dataclass(frozen=True)
class DecompositionPlan:
    steps: tuple[str, ...]
    raw_text: str = ""


def decompose(backend: ChatBackend, query: str, max_repairs: int = 2) -> DecompositionPlan:
    """Split a query into subtasks via the backend's {"steps": [[...]]}
    reply; malformed JSON triggers up to ``max_repairs`` repair prompts."""
    if not query.strip():
        raise ValueError("query must be non-empty")
    messages = [
        {"role": "system", "content": load_prompt("decomposer")},
        {"role": "user", "content": query},
    ]
    last_error = ""
    for attempt in range(max_repairs + 1):
        text = backend.complete(messages)
        try:
            data = _extract_json(text)
            steps_raw = data["steps"]
            # the nested [[...]] grouping carries no defined semantics;
            # flatten one level
            flat: list[str] = []
            for item in steps_raw:
                if isinstance(item, list):
                    flat.extend(str(t) for t in item)
                else:
                    flat.append(str(item))
            flat = [t for t in (t.strip() for t in flat) if t]
            if not flat:
                raise MalformedResponseError("empty steps list")
            return DecompositionPlan(steps=tuple(flat), raw_text=text)
        except (MalformedResponseError, KeyError, TypeError) as exc:
            last_error = str(exc)
            messages.append({"role": "assistant", "content": text})
            messages.append(
                {
                    "role": "user",
                    "content": 'Your reply was not valid. Emit only JSON in the '
                    'exact format {"steps": [["task", ...]]} with no other text.',
                }
            )
    raise MalformedPlanError(
        f"decomposer failed after {max_repairs} repairs: {last_error}"
    )


# -- Orchestrator ------------------------------------------------------


@dataclass(frozen=True)
class ToolExecution:
    call: ToolCall
    output: object
    raw_text: str
    rerouted_from: str = ""  # original tool name when routing rules applied


def orchestrate(
    backend: ChatBackend,
    task: str,
    registry: ToolRegistry,
    trained_models: TrainedModelsDict,
) -> ToolExecution:
    """Pick and run one tool for a task.

    A gen_mols call for a case missing from the trained-models dictionary
    is rerouted to train_gen_models, mirroring the prompt rules.
    """
    if len(registry) == 0:
        raise ValueError("tool registry is empty")
    # plain replacement: the prompt contains literal JSON braces
    prompt = (
        load_prompt("orchestrator")
        .replace("{tools}", registry.render())
        .replace("{trained_models}", trained_models.render())
    )
    messages = [
        {"role": "system", "content": prompt},
        {"role": "user", "content": f"Execute the following task: {task}"},
    ]
    text = backend.complete(messages)
    data = _extract_json(text)
    try:
        name = data["name"]
        parameters = data.get("parameters", {})
    except (KeyError, TypeError) as exc:
        raise MalformedResponseError(
            f"tool call missing 'name': {text[:200]!r}"
        ) from exc
    if not isinstance(parameters, dict):
        raise MalformedResponseError("'parameters' must be a dictionary")

    rerouted_from = ""
    if (
        name == "gen_mols"
        and "train_gen_models" in registry
        and parameters.get("case") not in trained_models
    ):
        rerouted_from = name
        name = "train_gen_models"
        parameters = {
            "model": str(parameters.get("model", "CVAE")),
            "epoch": 100,
            "case_name": str(parameters.get("case", task.split()[0] if task else "Case")),
        }
    call = ToolCall(name=name, parameters=parameters)
    spec = registry.get(call.name)
    resolved = spec.validate(call.parameters)
    output = spec.handler(**resolved)
    return ToolExecution(
        call=ToolCall(name=name, parameters=resolved),
        output=output,
        raw_text=text,
        rerouted_from=rerouted_from,
    )


# -- Summarizer --------------------------------------------------------


@dataclass(frozen=True)
class TaskResult:
    task: str
    executions: tuple[ToolExecution, ...]
    molecules: tuple[dict, ...] = ()  # property records with a "Smiles" key
    message: str = ""


@dataclass(frozen=True)
class AnswerSection:
    task: str
    narrative: str
    molecules: tuple[dict, ...]


@dataclass(frozen=True)
class StructuredAnswer:
    sections: tuple[AnswerSection, ...]
    provenance: tuple[ToolCall, ...]
    partial: bool = False

    def all_smiles(self) -> list[str]:
        out = []
        for section in self.sections:
            out.extend(str(m.get("Smiles", "")) for m in section.molecules)
        return [s for s in out if s]

    def render(self) -> str:
        lines = ["FINAL ANSWER:"]
        for i, section in enumerate(self.sections, 1):
            lines.append(f"\n## Task {i}: {section.task}")
            lines.append(section.narrative)
            for j, mol in enumerate(section.molecules, 1):
                lines.append(f"- Molecule {j}:")
                lines.append(f"  SMILES: {mol.get('Smiles', '')}")
                for key, value in mol.items():
                    if key != "Smiles":
                        lines.append(f"  {key}: {value}")
        if self.partial:
            lines.append("\n(partial answer: some results could not be summarized)")
        return "\n".join(lines)

    def to_payload(self) -> dict:
        return {
            "sections": [
                {
                    "task": s.task,
                    "narrative": s.narrative,
                    "molecules": [dict(m) for m in s.molecules],
                }
                for s in self.sections
            ],
            "provenance": [
                {"name": c.name, "parameters": c.parameters} for c in self.provenance
            ],
            "partial": self.partial,
        }


def extract_smiles(output: object) -> list[str]:
    """All SMILES present in a tool output (paper-log dict, result object,
    or list of records)."""
    if output is None:
        return []
    if hasattr(output, "molecules"):  # GenerationResult-like
        return [str(s) for s in output.molecules]
    if isinstance(output, dict):
        smiles = output.get("Smiles")
        if isinstance(smiles, dict):
            return [str(v) for v in smiles.values()]
        if isinstance(smiles, list):
            return [str(v) for v in smiles]
        if isinstance(smiles, str):
            return [smiles]
        return []
    if isinstance(output, list):
        out = []
        for item in output:
            if isinstance(item, dict) and "Smiles" in item:
                out.append(str(item["Smiles"]))
        return out
    return []


def _default_narrative(result: TaskResult) -> str:
    if result.message:
        return result.message
    n = len(result.molecules)
    if n == 0:
        return "No molecules were produced for this task."
    return f"Generated {n} molecule{'s' if n != 1 else ''} for this task."


def summarize(
    backend: ChatBackend | None,
    task_results: list[TaskResult],
) -> StructuredAnswer:
    """One section per task; molecule tables are rendered directly from
    tool outputs so no SMILES can be lost.  The backend, when available,
    only contributes narrative text."""
    if not task_results:
        raise ValueError("summarize requires at least one task result")

    def build() -> StructuredAnswer:
        sections = []
        provenance = []
        for result in task_results:
            narrative = _default_narrative(result)
            if backend is not None:
                try:
                    reply = backend.complete(
                        [
                            {"role": "system", "content": load_prompt("summarizer")},
                            {
                                "role": "user",
                                "content": f"Task: {result.task}\n"
                                f"Molecules: {[m.get('Smiles') for m in result.molecules]}\n"
                                f"Message: {result.message}",
                            },
                        ]
                    )
                    if reply.strip():
                        narrative = reply.strip()
                except BackendUnavailableError:
                    pass
            sections.append(
                AnswerSection(
                    task=result.task,
                    narrative=narrative,
                    molecules=result.molecules,
                )
            )
            provenance.extend(e.call for e in result.executions)
        return StructuredAnswer(sections=tuple(sections), provenance=tuple(provenance))

    answer = build()
    expected = []
    for result in task_results:
        for execution in result.executions:
            expected.extend(extract_smiles(execution.output))
    missing = set(expected) - set(answer.all_smiles())
    if missing:
        answer = build()  # one regeneration attempt
        missing = set(expected) - set(answer.all_smiles())
        if missing:
            return StructuredAnswer(
                sections=answer.sections, provenance=answer.provenance, partial=True
            )
    return answer


def check_completeness(answer: StructuredAnswer, expected_smiles: list[str]) -> None:
    missing = set(expected_smiles) - set(answer.all_smiles())
    if missing:
        raise IncompleteAnswerError(f"answer is missing SMILES: {sorted(missing)}")


# -- Chat agent --------------------------------------------------------


def chat(backend: ChatBackend, message: str, history: list[dict] | None = None) -> str:
    if not message.strip():
        return "Please enter a query describing what you would like to do."
    messages = [{"role": "system", "content": load_prompt("chat")}]
    messages.extend(history or [])
    messages.append({"role": "user", "content": message})
    return backend.complete(messages)
