"""Benchmark queries (tiers S/M/L) and the OA/TS/SSA/FA metrics.

OA = correct tools / total tools; TS = correct queries / total queries;
SSA = correct responses / total; FA = TS * SSA / 100.  A query counts as
correct when the selected tool set covers every expected tool and
contains none from the forbidden set.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path

from ..errors import ParseError, SchemaError
from ..molcore.parser import parse_smiles

TIERS = ("S", "M", "L")
_TASK_RANGE = {"S": (1, 1), "M": (1, 3), "L": (4, 5)}


@dataclass(frozen=True)
class BenchmarkQuery:
    id: str
    text: str
    tier: str
    expected_tools: tuple[str, ...]
    task_count: int
    case_labels: tuple[str, ...] = ()
    forbidden_tools: tuple[str, ...] = ()

    def __post_init__(self):
        if self.tier not in TIERS:
            raise SchemaError(f"query {self.id!r}: unknown tier {self.tier!r}")
        low, high = _TASK_RANGE[self.tier]
        if not low <= self.task_count <= high:
            raise SchemaError(
                f"query {self.id!r}: tier {self.tier} requires task_count in "
                f"[{low}, {high}], got {self.task_count}"
            )


@dataclass(frozen=True)
class EvalRun:
    """Scoring inputs for one executed query, taken from the audit log."""

    query_id: str
    selected_tools: tuple[str, ...]
    answer_smiles: tuple[str, ...]
    tool_smiles: tuple[str, ...]
    task_flags: tuple[bool, ...] = ()


@dataclass(frozen=True)
class Metrics:
    oa: float
    ts: float
    ssa: float
    fa: float

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not 0.0 <= value <= 100.0:
                raise ValueError(f"{name} out of [0, 100]: {value}")


def load_benchmark(path: str | Path) -> list[BenchmarkQuery]:
    """JSON-lines loader; tier/task-count violations raise SchemaError
    with the offending ids."""
    queries = []
    errors = []
    for line_no, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), 1
    ):
        line = line.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
            queries.append(
                BenchmarkQuery(
                    id=str(data["id"]),
                    text=data["text"],
                    tier=data["tier"],
                    expected_tools=tuple(data["expected_tools"]),
                    task_count=int(data["task_count"]),
                    case_labels=tuple(data.get("case_labels", ())),
                    forbidden_tools=tuple(data.get("forbidden_tools", ())),
                )
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            errors.append(f"line {line_no}: {exc}")
        except SchemaError as exc:
            errors.append(str(exc))
    if errors:
        raise SchemaError("; ".join(errors))
    return queries


def save_benchmark(queries: list[BenchmarkQuery], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for query in queries:
            fh.write(json.dumps(asdict(query)) + "\n")


def _query_correct(query: BenchmarkQuery, run: EvalRun) -> bool:
    actual = set(run.selected_tools)
    return set(query.expected_tools) <= actual and not (
        actual & set(query.forbidden_tools)
    )


def score_tool_selection(
    queries: list[BenchmarkQuery], runs: dict[str, EvalRun]
) -> tuple[float, float, dict[str, bool]]:
    """Returns (OA, TS, per-query correctness)."""
    total_tools = 0
    correct_tools = 0
    per_query: dict[str, bool] = {}
    for query in queries:
        run = runs.get(query.id)
        actual = set(run.selected_tools) if run else set()
        total_tools += len(query.expected_tools)
        correct_tools += sum(1 for t in query.expected_tools if t in actual)
        per_query[query.id] = run is not None and _query_correct(query, run)
    oa = 100.0 * correct_tools / total_tools if total_tools else 0.0
    ts = 100.0 * sum(per_query.values()) / len(queries) if queries else 0.0
    return oa, ts, per_query


def score_summarization(run: EvalRun, query: BenchmarkQuery) -> bool:
    """Correct response: every answer SMILES is valid SMILES, the count is
    at least the task count, and no tool-produced molecule was lost."""
    if len(run.answer_smiles) < query.task_count:
        return False
    for smiles in run.answer_smiles:
        try:
            parse_smiles(smiles)
        except ParseError:
            return False
    return set(run.tool_smiles) <= set(run.answer_smiles)


def final_accuracy(ts: float, ssa: float) -> float:
    if not (0.0 <= ts <= 100.0 and 0.0 <= ssa <= 100.0):
        raise ValueError("ts and ssa must be in [0, 100]")
    return ts * ssa / 100.0


def score_all(
    queries: list[BenchmarkQuery], runs: dict[str, EvalRun]
) -> Metrics:
    oa, ts, _ = score_tool_selection(queries, runs)
    if queries:
        correct = sum(
            1
            for query in queries
            if query.id in runs and score_summarization(runs[query.id], query)
        )
        ssa = 100.0 * correct / len(queries)
    else:
        ssa = 0.0
    return Metrics(oa=oa, ts=ts, ssa=ssa, fa=final_accuracy(ts, ssa))


@dataclass
class Report:
    per_tier: dict  # tier -> Metrics
    overall: Metrics
    n_queries: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "per_tier": {t: asdict(m) for t, m in self.per_tier.items()},
                "overall": asdict(self.overall),
                "n_queries": self.n_queries,
            },
            indent=2,
        )

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["tier", "OA", "TS", "SSA", "FA"])
        for tier, metrics in self.per_tier.items():
            writer.writerow(
                [tier, f"{metrics.oa:.2f}", f"{metrics.ts:.2f}",
                 f"{metrics.ssa:.2f}", f"{metrics.fa:.2f}"]
            )
        writer.writerow(
            ["ALL", f"{self.overall.oa:.2f}", f"{self.overall.ts:.2f}",
             f"{self.overall.ssa:.2f}", f"{self.overall.fa:.2f}"]
        )
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = ["| Tier | OA | TS | SSA | FA |", "|---|---|---|---|---|"]
        for tier, m in list(self.per_tier.items()) + [("ALL", self.overall)]:
            lines.append(
                f"| {tier} | {m.oa:.2f} | {m.ts:.2f} | {m.ssa:.2f} | {m.fa:.2f} |"
            )
        return "\n".join(lines)


def report(queries: list[BenchmarkQuery], runs: dict[str, EvalRun]) -> Report:
    per_tier = {}
    for tier in TIERS:
        subset = [q for q in queries if q.tier == tier]
        if subset:
            per_tier[tier] = score_all(subset, runs)
    return Report(
        per_tier=per_tier, overall=score_all(queries, runs), n_queries=len(queries)
    )
