"""FastAPI service exposing chat, generation jobs, pipeline evaluation,
dataset fetching, and the trained-models dictionary."""

from __future__ import annotations

from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from ..agents import (
    AgentSystem,
    ChatBackend,
    HttpChatBackend,
    ScriptedMockBackend,
    TrainedModelsDict,
    build_default_registry,
)
from ..datasets import fetch as dataset_fetch
from ..errors import BackendUnavailableError, MaddError, UnknownCaseError
from ..generate import EvoBackend, GenerationRequest, generate
from ..pipeline import Thresholds, apply_groups, evaluate_batch
from ..pipeline.filters import _row_record
from ..predict import DockingProvider
from .config import ServiceConfig
from .jobs import JobStore


class ChatRequest(BaseModel):
    message: str
    session_id: str = "default"


class GenerateRequest(BaseModel):
    case: str
    num: int = 1
    model: str = "CVAE"
    train_if_missing: bool = False


class PipelineRequest(BaseModel):
    smiles: list[str]
    case: str = ""


class FetchRequest(BaseModel):
    source: str = "chembl"
    target: str
    measure: str = "IC50"


@dataclass
class AppState:
    system: AgentSystem
    evo: EvoBackend
    jobs: JobStore
    docking: DockingProvider
    thresholds: Thresholds
    sessions: dict = field(default_factory=dict)
    fetch_fn: object = dataset_fetch


def build_state(
    config: ServiceConfig | None = None,
    backend: ChatBackend | None = None,
    fetch_fn=dataset_fetch,
) -> AppState:
    config = config or ServiceConfig()
    if backend is None:
        if config.llm_base:
            backend = HttpChatBackend(
                base_url=config.llm_base,
                model=config.llm_model,
                api_key_env=config.llm_key_env,
            )
        else:
            backend = ScriptedMockBackend(script=[], strict=False)
    trained = TrainedModelsDict()
    docking = DockingProvider()
    thresholds = Thresholds()

    def fetch_tool(source: str = "chembl", target: str = "", measure: str = "IC50"):
        _, message = fetch_fn(source, target, measure)
        return message

    registry, evo = build_default_registry(
        backend,
        trained,
        docking_provider=docking,
        thresholds=thresholds,
        dataset_fetch=fetch_tool,
    )
    system = AgentSystem(
        backend=backend,
        registry=registry,
        trained_models=trained,
        audit_path=config.audit_path or None,
    )
    return AppState(
        system=system,
        evo=evo,
        jobs=JobStore(workers=config.workers),
        docking=docking,
        thresholds=thresholds,
        fetch_fn=fetch_fn,
    )


def create_app(state: AppState | None = None, config: ServiceConfig | None = None) -> FastAPI:
    state = state or build_state(config)
    app = FastAPI(title="madd", version="0.1.0")
    app.state.madd = state

    @app.post("/chat")
    def chat_endpoint(request: ChatRequest):
        if not request.message.strip():
            raise HTTPException(status_code=400, detail="empty message")
        try:
            answer, record = state.system.run_query(request.message)
        except BackendUnavailableError as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        except MaddError as exc:
            raise HTTPException(status_code=502, detail=str(exc))
        state.sessions.setdefault(request.session_id, []).append(record.run_id)
        return {
            "session_id": request.session_id,
            "run_id": record.run_id,
            "answer": answer.to_payload(),
            "plan": list(record.plan),
            "tools": record.selected_tools(),
        }

    @app.post("/generate")
    def generate_endpoint(request: GenerateRequest):
        if request.case not in state.evo.cases and not request.train_if_missing:
            raise HTTPException(
                status_code=404, detail=f"unknown case {request.case!r}"
            )

        def run():
            if request.case not in state.evo.cases:
                spec = state.system.registry.get("train_gen_models")
                spec.handler(case_name=request.case)
            result = generate(
                state.evo,
                GenerationRequest(
                    case=request.case, num=request.num, model=request.model
                ),
            )
            rows = evaluate_batch(
                list(result.molecules),
                state.docking,
                state.thresholds,
                target=request.case,
            )
            hit_report = apply_groups(rows)
            return {
                "molecules": list(result.molecules),
                "valid_fraction": result.valid_fraction,
                "rows": [_row_record(r) for r in rows],
                "percentages": hit_report.percentages,
            }

        job = state.jobs.submit("generate", run)
        return {"job_id": job.id}

    @app.get("/jobs/{job_id}")
    def job_endpoint(job_id: str):
        job = state.jobs.get(job_id)
        if job is None:
            raise HTTPException(status_code=404, detail=f"unknown job {job_id!r}")
        return job.to_dict()

    @app.get("/models")
    def models_endpoint():
        return state.system.trained_models.snapshot()

    @app.post("/pipeline/evaluate")
    def pipeline_endpoint(request: PipelineRequest):
        rows = evaluate_batch(
            request.smiles, state.docking, state.thresholds, target=request.case
        )
        hit_report = apply_groups(rows)
        return {
            "rows": [_row_record(r) for r in rows],
            "percentages": hit_report.percentages,
            "n_valid": hit_report.n_valid,
            "n_total": hit_report.n_total,
        }

    @app.post("/datasets/fetch")
    def fetch_endpoint(request: FetchRequest):
        if not request.target:
            raise HTTPException(status_code=400, detail="target must be non-empty")

        def run():
            records, message = state.fetch_fn(
                request.source, request.target, request.measure
            )
            return {"message": message, "count": len(records)}

        job = state.jobs.submit("fetch", run)
        return {"job_id": job.id}

    return app
