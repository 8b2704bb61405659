"""Benchmark loading and OA/TS/SSA/FA scoring."""

from .harness import (
    BenchmarkQuery,
    EvalRun,
    Metrics,
    Report,
    final_accuracy,
    load_benchmark,
    report,
    save_benchmark,
    score_all,
    score_summarization,
    score_tool_selection,
)

__all__ = [
    "BenchmarkQuery",
    "EvalRun",
    "Metrics",
    "final_accuracy",
    "load_benchmark",
    "Report",
    "report",
    "save_benchmark",
    "score_all",
    "score_summarization",
    "score_tool_selection",
]
