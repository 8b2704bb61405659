"""Command-line interface: chat | generate | eval | pipeline | fetch | serve."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from ..datasets import fetch as dataset_fetch
from ..evalharness import EvalRun, load_benchmark, report
from ..pipeline import Thresholds, apply_groups, evaluate_batch, rows_to_csv
from ..predict import DockingProvider
from .app import build_state
from .config import load_config


@click.group()
@click.option("--config", "config_path", default=None, help="Path to a YAML config file.")
@click.option("--llm-base", default=None, help="Chat-completion base URL.")
@click.option("--llm-model", default=None, help="Chat-completion model name.")
@click.pass_context
def main(ctx, config_path, llm_base, llm_model):
    """MADD-style hit-identification engine."""
    ctx.ensure_object(dict)
    ctx.obj["config"] = load_config(
        {"llm_base": llm_base, "llm_model": llm_model}, config_path
    )


@main.command()
@click.argument("message", nargs=-1, required=True)
@click.option("--mock-script", default=None, help="Scripted mock backend file (offline).")
@click.pass_context
def chat(ctx, message, mock_script):
    """Run one query through the full agent pipeline."""
    backend = None
    if mock_script:
        from ..agents import ScriptedMockBackend

        backend = ScriptedMockBackend.from_file(mock_script)
    state = build_state(ctx.obj["config"], backend=backend)
    answer, record = state.system.run_query(" ".join(message))
    click.echo(answer.render())
    click.echo(f"\n[plan: {list(record.plan)}; tools: {record.selected_tools()}]")


@main.command()
@click.option("--case", required=True)
@click.option("--num", default=1, type=int)
@click.option("--model", default="CVAE")
@click.option("--seed", default=0, type=int)
@click.option("--out", "out_path", default=None, help="Write property CSV here.")
def generate(case, num, model, seed, out_path):
    """Generate molecules with the built-in evolutionary backend."""
    from ..generate import EvoBackend, EvoConfig, GenerationRequest
    from ..generate import generate as run_generate

    evo = EvoBackend(
        EvoConfig(population_size=20, generations=5, seed=seed), case_free=True
    )
    result = run_generate(evo, GenerationRequest(case=case, num=num, model=model))
    rows = evaluate_batch(list(result.molecules), DockingProvider(), target=case)
    if out_path:
        Path(out_path).write_text(rows_to_csv(rows), encoding="utf-8")
        click.echo(f"wrote {len(rows)} rows to {out_path}")
    else:
        click.echo(rows_to_csv(rows))


@main.command("eval")
@click.option("--dataset", "dataset_path", required=True, type=click.Path(exists=True))
@click.option("--runs", "runs_path", required=True, type=click.Path(exists=True),
              help="JSON-lines of EvalRun records.")
@click.option("--tier", default=None, type=click.Choice(["S", "M", "L"]))
@click.option("--format", "fmt", default="markdown",
              type=click.Choice(["markdown", "csv", "json"]))
def eval_command(dataset_path, runs_path, tier, fmt):
    """Score a benchmark run set with OA/TS/SSA/FA."""
    queries = load_benchmark(dataset_path)
    if tier:
        queries = [q for q in queries if q.tier == tier]
    runs = {}
    for line in Path(runs_path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        data = json.loads(line)
        runs[data["query_id"]] = EvalRun(
            query_id=data["query_id"],
            selected_tools=tuple(data["selected_tools"]),
            answer_smiles=tuple(data["answer_smiles"]),
            tool_smiles=tuple(data["tool_smiles"]),
        )
    result = report(queries, runs)
    if fmt == "markdown":
        click.echo(result.to_markdown())
    elif fmt == "csv":
        click.echo(result.to_csv())
    else:
        click.echo(result.to_json())


@main.command()
@click.argument("smiles_file", type=click.Path(exists=True))
@click.option("--out", "out_path", default=None)
@click.option("--docking-max", default=-7.0, type=float)
@click.option("--sa-max", default=3.0, type=float)
@click.option("--qed-min", default=0.6, type=float)
def pipeline(smiles_file, out_path, docking_max, sa_max, qed_min):
    """Evaluate a SMILES file through the property table + GR filters."""
    smiles = [
        line.strip()
        for line in Path(smiles_file).read_text(encoding="utf-8").splitlines()
        if line.strip() and not line.startswith("#")
    ]
    thresholds = Thresholds(docking_max=docking_max, sa_max=sa_max, qed_min=qed_min)
    rows = evaluate_batch(smiles, DockingProvider(), thresholds)
    hit_report = apply_groups(rows)
    csv_text = rows_to_csv(rows)
    if out_path:
        Path(out_path).write_text(csv_text, encoding="utf-8")
        click.echo(f"wrote {len(rows)} rows to {out_path}")
    else:
        click.echo(csv_text)
    click.echo(json.dumps(hit_report.percentages, indent=2), err=True)


@main.command()
@click.option("--source", default="chembl", type=click.Choice(["chembl", "bindingdb"]))
@click.option("--target", required=True)
@click.option("--measure", default="IC50", type=click.Choice(["Ki", "Kd", "IC50"]))
@click.option("--cache-dir", default=None)
@click.option("--out-dir", default="MADD/ds")
def fetch(source, target, measure, cache_dir, out_dir):
    """Fetch bioactivity records for a target protein."""
    try:
        _, message = dataset_fetch(
            source, target, measure, cache_dir=cache_dir, out_dir=out_dir
        )
    except Exception as exc:
        click.echo(f"fetch failed: {exc}", err=True)
        sys.exit(1)
    click.echo(message)


@main.command()
@click.option("--host", default=None)
@click.option("--port", default=None, type=int)
@click.pass_context
def serve(ctx, host, port):
    """Start the HTTP service."""
    import uvicorn

    from .app import create_app

    config = ctx.obj["config"]
    app = create_app(config=config)
    uvicorn.run(app, host=host or config.host, port=port or config.port)


if __name__ == "__main__":
    main()
