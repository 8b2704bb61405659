"""Four-agent pipeline: Decomposer, Orchestrator, Summarizer, Chat."""

from .backend import ChatBackend, HttpChatBackend, ScriptedMockBackend
from .core import (
    AnswerSection,
    DecompositionPlan,
    StructuredAnswer,
    TaskResult,
    ToolExecution,
    chat,
    check_completeness,
    decompose,
    extract_smiles,
    load_prompt,
    orchestrate,
    summarize,
)
from .system import AgentSystem, RunRecord, build_default_registry, property_records
from .tools import ToolArgument, ToolCall, ToolRegistry, ToolSpec, TrainedModelsDict

__all__ = [
    "ChatBackend",
    "HttpChatBackend",
    "ScriptedMockBackend",
    "AnswerSection",
    "DecompositionPlan",
    "StructuredAnswer",
    "TaskResult",
    "ToolExecution",
    "chat",
    "check_completeness",
    "decompose",
    "extract_smiles",
    "load_prompt",
    "orchestrate",
    "summarize",
    "AgentSystem",
    "RunRecord",
    "build_default_registry",
    "property_records",
    "ToolArgument",
    "ToolCall",
    "ToolRegistry",
    "ToolSpec",
    "TrainedModelsDict",
]
