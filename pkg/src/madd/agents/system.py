"""Whole-pipeline wiring: run_query state machine, audit log, and the
default tool registry over the generation/prediction/dataset modules."""

from __future__ import annotations

import json
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from ..generate import (
    EvoBackend,
    EvoConfig,
    GenerationRequest,
    TrainedCase,
    generate,
)
from ..pipeline import Thresholds, evaluate_batch
from ..pipeline.filters import _row_record
from ..predict import DockingProvider
from .backend import ChatBackend
from .core import (
    DecompositionPlan,
    StructuredAnswer,
    TaskResult,
    ToolExecution,
    chat,
    decompose,
    extract_smiles,
    orchestrate,
    summarize,
)
from .tools import ToolArgument, ToolRegistry, ToolSpec, TrainedModelsDict


@dataclass
class RunRecord:
    """Audit trail for one query: plan, tool calls, raw texts, timings."""

    query: str
    run_id: str = field(default_factory=lambda: uuid.uuid4().hex)
    plan: tuple[str, ...] = ()
    events: list[dict] = field(default_factory=list)
    started: float = field(default_factory=time.time)

    def log(self, kind: str, **payload) -> None:
        self.events.append(
            {"run_id": self.run_id, "t": time.time() - self.started, "kind": kind, **payload}
        )

    def tool_calls(self) -> list[dict]:
        return [e for e in self.events if e["kind"] == "tool_call"]

    def selected_tools(self) -> list[str]:
        return [e["name"] for e in self.tool_calls()]

    def write_jsonl(self, path: str | Path) -> None:
        with open(path, "a", encoding="utf-8") as fh:
            for event in self.events:
                fh.write(json.dumps(event, default=str) + "\n")


def property_records(rows) -> dict:
    """Paper-log style property dictionary: column -> {index: value}."""
    records = [_row_record(row) for row in rows]
    if not records:
        return {"Smiles": {}}
    out: dict = {}
    for column in records[0]:
        out[column] = {str(i): rec[column] for i, rec in enumerate(records)}
    return out


@dataclass
class AgentSystem:
    backend: ChatBackend
    registry: ToolRegistry
    trained_models: TrainedModelsDict
    audit_path: str | Path | None = None
    summarizer_backend: ChatBackend | None = None

    def run_query(self, query: str) -> tuple[StructuredAnswer, RunRecord]:
        record = RunRecord(query=query)
        record.log("input", text=query)
        plan: DecompositionPlan = decompose(self.backend, query)
        record.plan = plan.steps
        record.log("plan", steps=list(plan.steps), raw=plan.raw_text)

        task_results: list[TaskResult] = []
        for task in plan.steps:
            execution: ToolExecution = orchestrate(
                self.backend, task, self.registry, self.trained_models
            )
            record.log(
                "tool_call",
                name=execution.call.name,
                parameters=execution.call.parameters,
                raw=execution.raw_text,
                rerouted_from=execution.rerouted_from,
            )
            output = execution.output
            molecules: tuple[dict, ...] = ()
            message = ""
            if isinstance(output, dict) and isinstance(output.get("Smiles"), dict):
                columns = list(output)
                indices = list(output["Smiles"])
                molecules = tuple(
                    {col: output[col][i] for col in columns if i in output[col]}
                    for i in indices
                )
            elif isinstance(output, str):
                message = output
            else:
                smiles = extract_smiles(output)
                molecules = tuple({"Smiles": s} for s in smiles)
                if not smiles:
                    message = str(output)
            record.log("tool_output", smiles=extract_smiles(output), message=message)
            task_results.append(
                TaskResult(
                    task=task,
                    executions=(execution,),
                    molecules=molecules,
                    message=message,
                )
            )

        answer = summarize(self.summarizer_backend, task_results)
        record.log(
            "answer",
            smiles=answer.all_smiles(),
            partial=answer.partial,
            text=answer.render(),
        )
        if self.audit_path:
            record.write_jsonl(self.audit_path)
        return answer, record

    def chat(self, message: str, history: list[dict] | None = None) -> str:
        return chat(self.backend, message, history)


def build_default_registry(
    backend: ChatBackend,
    trained_models: TrainedModelsDict,
    evo_backend: EvoBackend | None = None,
    docking_provider: DockingProvider | None = None,
    thresholds: Thresholds | None = None,
    activity_model=None,
    dataset_fetch=None,
    train_corpus: list[str] | None = None,
) -> tuple[ToolRegistry, EvoBackend]:
    """Wire gen_mols / train_gen_models / make_answer_chat_model (and
    fetch_data when a dataset fetcher is supplied) to the underlying
    modules."""
    evo = evo_backend or EvoBackend(EvoConfig(population_size=20, generations=5))
    provider = docking_provider or DockingProvider()
    registry = ToolRegistry()

    def gen_mols(case: str, num: int, model: str = "CVAE"):
        result = generate(evo, GenerationRequest(case=case, num=num, model=model))
        rows = evaluate_batch(
            list(result.molecules),
            provider,
            thresholds,
            activity_model=activity_model,
            target=case,
        )
        return property_records(rows)

    def train_gen_models(model: str = "CVAE", epoch: int = 100, case_name: str = "Case"):
        seeds = train_corpus or [
            "c1ccccc1", "CCO", "c1ccncc1", "CC(=O)Nc1ccccc1", "CCN(CC)CC",
            "c1ccc2[nH]ccc2c1", "O=C(O)c1ccccc1",
        ]
        evo.register_case(
            case_name,
            TrainedCase(
                seed_population=tuple(seeds),
                fragment_library=evo.config.fragment_library,
                target=case_name,
            ),
        )
        trained_models.add(
            case_name,
            f"Generation of drug molecules for the {case_name} case "
            f"(model {model}, trained for {epoch} epochs).",
        )
        return f"Trained generative model '{model}' for case '{case_name}' ({epoch} epochs)."

    def make_answer_chat_model(msg: str):
        return chat(backend, msg)

    registry.register(
        ToolSpec(
            name="gen_mols",
            description=(
                "Generate molecules by generative models. Only use this function "
                "if the user asks to generate molecules for cases with already "
                "available generative models that can be found in a special "
                "dictionary AVAILABLE_TRAINED_GEN_MODELS. If the user wants to "
                "generate molecules for another case you should train new model."
            ),
            arguments=(
                ToolArgument("case", "str", "Name of the case same as in AVAILABLE_TRAINED_GEN_MODELS dictionary.", required=True),
                ToolArgument("num", "int", "Number of molecules for a generation.", default=1),
                ToolArgument("model", "str", "Model for generation: 'CVAE', 'LSTM', 'RL', 'GraphGA'.", default="CVAE"),
            ),
            handler=gen_mols,
        )
    )
    registry.register(
        ToolSpec(
            name="train_gen_models",
            description=(
                "Train a generative model with a custom dataset (use if the user "
                "requests generation for a case that is not presented in the "
                "current generative models dictionary AVAILABLE_TRAINED_GEN_MODELS)."
            ),
            arguments=(
                ToolArgument("model", "str", "Model for finetuning: 'RL', 'CVAE', 'LSTM', 'GraphGA'.", default="CVAE"),
                ToolArgument("epoch", "int", "Number of train epochs.", default=100),
                ToolArgument("case_name", "str", "The name of the disease case for later inference.", required=True),
            ),
            handler=train_gen_models,
        )
    )
    registry.register(
        ToolSpec(
            name="make_answer_chat_model",
            description="Answer general questions conversationally, without tools.",
            arguments=(
                ToolArgument("msg", "str", "The user's message.", required=True),
            ),
            handler=make_answer_chat_model,
        )
    )
    if dataset_fetch is not None:
        registry.register(
            ToolSpec(
                name="fetch_data",
                description="Download bioactivity data for a target protein from ChEMBL or BindingDB.",
                arguments=(
                    ToolArgument("source", "str", "Database: 'chembl' or 'bindingdb'.", default="chembl"),
                    ToolArgument("target", "str", "Target protein name.", required=True),
                    ToolArgument("measure", "str", "Affinity measure: Ki, Kd, or IC50.", default="IC50"),
                ),
                handler=dataset_fetch,
            )
        )
    return registry, evo
