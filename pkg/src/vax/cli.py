"""Command-line entry points: run the pipeline, explain instances, serve.

Exit codes: 0 success, 2 input error, 3 internal consistency failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from .errors import ConsistencyError, InputError
from .pipeline import RunConfig, explain_instances, run

EXIT_INPUT_ERROR = 2
EXIT_CONSISTENCY_ERROR = 3


def _fail(exc: Exception) -> None:
    click.echo(f"error: {exc}", err=True)
    code = EXIT_INPUT_ERROR if isinstance(exc, InputError) else EXIT_CONSISTENCY_ERROR
    sys.exit(code)


def _parse_trees(value: str) -> int | str:
    if value == "auto":
        return "auto"
    try:
        return int(value)
    except ValueError:
        raise click.BadParameter("must be a positive integer or 'auto'")


def _parse_blend(value: str) -> float | str:
    if value == "auto":
        return "auto"
    try:
        return float(value)
    except ValueError:
        raise click.BadParameter("must be a number in [0, 1] or 'auto'")


@click.group()
def main() -> None:
    """Explain class-labeled datasets with jumping patterns, a matrix view,
    and pattern-aware similarity maps."""


@main.command("run")
@click.option("--input", "input_path", required=True, type=click.Path(), help="Input CSV.")
@click.option("--label-column", required=True, help="Name of the class column.")
@click.option("--out", "out_dir", required=True, type=click.Path(), help="Artifact directory.")
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("--trees", default="auto", show_default=True, help="Tree count or 'auto'.")
@click.option("--lambda", "blend", default="auto", show_default=True, help="Blend weight in [0, 1] or 'auto'.")
@click.option("--discretize-bins", default=None, type=int, help="Equal-width bins to classify a numeric label.")
@click.option("--histogram-bins", default=None, type=int, help="Override the automatic histogram bin count.")
@click.option("--drop-ambiguous/--no-drop-ambiguous", default=True, show_default=True)
@click.option("--tree-schedule", default=None, help="Comma-separated increasing tree counts for auto mode.")
@click.option("--lambda-grid", default=None, help="Comma-separated blend weights for auto mode.")
@click.option("--no-embed", is_flag=True, default=False, help="Skip the similarity-map stage.")
@click.option("--dump-raw-patterns", default=None, type=click.Path(), help="Write raw mined patterns as JSON lines.")
def run_command(
    input_path: str,
    label_column: str,
    out_dir: str,
    seed: int,
    trees: str,
    blend: str,
    discretize_bins: int | None,
    histogram_bins: int | None,
    drop_ambiguous: bool,
    tree_schedule: str | None,
    lambda_grid: str | None,
    no_embed: bool,
    dump_raw_patterns: str | None,
) -> None:
    """Run the full pipeline and write the artifact set."""
    try:
        schedule = (
            [int(chunk) for chunk in tree_schedule.split(",")] if tree_schedule else None
        )
        grid = (
            [float(chunk) for chunk in lambda_grid.split(",")] if lambda_grid else None
        )
    except ValueError:
        _fail(InputError("schedules and grids must be comma-separated numbers"))
        return
    config = RunConfig(
        input_path=input_path,
        label_column=label_column,
        out_dir=out_dir,
        seed=seed,
        trees=_parse_trees(trees),
        blend=_parse_blend(blend),
        discretize_bins=discretize_bins,
        histogram_bins=histogram_bins,
        drop_ambiguous=drop_ambiguous,
        tree_schedule=schedule,
        blend_grid=grid,
        embed_enabled=not no_embed,
        dump_raw_patterns=dump_raw_patterns,
    )
    try:
        result = run(config)
    except (InputError, ConsistencyError) as exc:
        _fail(exc)
        return
    manifest = result.manifest
    click.echo(
        f"wrote {result.out_dir}: {manifest['counts']['selected']} patterns, "
        f"coverage {manifest['coverage']:.3f}, trees {manifest['resolved_trees']}"
    )


@main.command("explain")
@click.option("--artifacts", "artifacts_dir", required=True, type=click.Path())
@click.option("--instances", required=True, help="Comma-separated instance ids.")
def explain_command(artifacts_dir: str, instances: str) -> None:
    """Print the supporting pattern of each requested instance."""
    try:
        ids = [int(chunk) for chunk in instances.split(",") if chunk.strip()]
    except ValueError:
        _fail(InputError("instance ids must be integers"))
        return
    try:
        result = explain_instances(artifacts_dir, ids)
    except (InputError, ConsistencyError) as exc:
        _fail(exc)
        return
    click.echo(json.dumps(result, indent=2))


@main.command("serve")
@click.option("--artifacts", "artifacts_dir", required=True, type=click.Path())
@click.option("--port", default=8810, show_default=True, type=int)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--static-dir", default=None, type=click.Path(), help="Built UI assets to serve at /.")
def serve_command(artifacts_dir: str, port: int, host: str, static_dir: str | None) -> None:
    """Serve the HTTP API (and, optionally, the built UI) over an artifact set."""
    import uvicorn

    from .service import create_app

    if static_dir is None:
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        static_dir = str(bundled) if bundled.is_dir() else None
    try:
        app = create_app(artifacts_dir, static_dir=static_dir)
    except (InputError, ConsistencyError) as exc:
        _fail(exc)
        return
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
