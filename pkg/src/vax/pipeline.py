"""End-to-end run orchestration: ingest, mine, select, explain, embed, emit.

A run is fully determined by (config, seed): artifacts are byte-stable
across repeated runs. Stage timings are wall-clock and therefore live in a
separate sidecar file outside the deterministic artifact set.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import artifacts
from .dataset import (
    Dataset,
    IngestConfig,
    IngestReport,
    ingest_csv,
    load_canonical_csv,
    to_canonical_csv,
)
from .embed import (
    EmbeddingResult,
    TreeSweepResult,
    default_lambda_grid,
    embed_at,
    extend,
    pairwise_distances,
    sweep_lambda,
    sweep_trees,
    weight,
)
from .errors import ConsistencyError, InputError, VaxError
from .explain import ExplanationModel, MatrixOptions, build_matrix_model
from .forest import mine
from .jep import JepSet, SelectionCounts, select_and_aggregate, supported_row_indices

DEFAULT_SEED = 0


@dataclass
class RunConfig:
    input_path: str
    label_column: str
    out_dir: str
    seed: int = DEFAULT_SEED
    trees: int | str = "auto"
    blend: float | str = "auto"
    discretize_bins: int | None = None
    histogram_bins: int | None = None
    drop_ambiguous: bool = True
    tree_schedule: list[int] | None = None
    blend_grid: list[float] | None = None
    embed_enabled: bool = True
    dump_raw_patterns: str | None = None

    def validate(self) -> None:
        if isinstance(self.trees, str) and self.trees != "auto":
            raise InputError("trees must be a positive integer or 'auto'")
        if isinstance(self.trees, int) and self.trees < 1:
            raise InputError("trees must be a positive integer or 'auto'")
        if isinstance(self.blend, str) and self.blend != "auto":
            raise InputError("lambda must be a number in [0, 1] or 'auto'")
        if isinstance(self.blend, float) and not 0.0 <= self.blend <= 1.0:
            raise InputError("lambda must be a number in [0, 1] or 'auto'")


@dataclass
class RunResult:
    out_dir: Path
    manifest: dict
    dataset: Dataset
    report: IngestReport
    jep_set: JepSet
    counts: SelectionCounts
    model: ExplanationModel
    embeddings: list[EmbeddingResult] = field(default_factory=list)
    resolved_blend: float | None = None


@contextmanager
def _stage(name: str, timings: dict[str, float]):
    start = time.perf_counter()
    try:
        yield
    except VaxError as exc:
        raise type(exc)(f"{name}: {exc}") from exc
    finally:
        timings[name] = time.perf_counter() - start


def _patterns_payload(dataset: Dataset, jep_set: JepSet) -> dict:
    rows = []
    for idx, p in enumerate(jep_set.patterns):
        rows.append(
            {
                "id": p.id,
                "class": dataset.classes[p.class_id],
                "selectors": [
                    {
                        "variable": dataset.variable_names[v],
                        "low": float(low),
                        "high": float(high),
                    }
                    for v, (low, high) in sorted(p.selectors.items())
                ],
                "support": p.support,
                "confidence": p.confidence,
                "fet_p": p.fet_p,
                "supported_instance_ids": [
                    dataset.instance_ids[r] for r in p.supported_rows
                ],
                "aggregated_from": p.aggregated_from,
                "cumulative_coverage": jep_set.cumulative_coverage[idx],
            }
        )
    return {"schema_version": artifacts.SCHEMA_VERSION, "patterns": rows}


def _map_payload(
    dataset: Dataset, embedding: EmbeddingResult, row_pattern_ids: list[int | None]
) -> dict:
    points = []
    for i in range(dataset.n_rows):
        points.append(
            {
                "instance_id": dataset.instance_ids[i],
                "x": float(embedding.coordinates[i, 0]),
                "y": float(embedding.coordinates[i, 1]),
                "class": dataset.classes[int(dataset.labels[i])],
                "pattern_id": row_pattern_ids[i],
            }
        )
    return {
        "schema_version": artifacts.SCHEMA_VERSION,
        "lambda": embedding.lam,
        "points": points,
        "stress": embedding.stress,
        "silhouette_inverted": embedding.silhouette_inverted,
    }


def run(config: RunConfig) -> RunResult:
    """Execute the full pipeline and emit the artifact set."""
    config.validate()
    timings: dict[str, float] = {}
    files: dict[str, str] = {}

    with _stage("ingest", timings):
        dataset, report = ingest_csv(
            config.input_path,
            config.label_column,
            IngestConfig(
                drop_ambiguous=config.drop_ambiguous,
                discretize_bins=config.discretize_bins,
            ),
        )
        canonical = to_canonical_csv(dataset)

    with _stage("mine", timings):
        tree_curve: list[tuple[int, float]] = []
        if config.trees == "auto":
            sweep: TreeSweepResult = sweep_trees(
                dataset, config.tree_schedule, config.seed
            )
            raw = sweep.raw_patterns
            jep_set, counts = sweep.jep_set, sweep.counts
            resolved_trees = sweep.chosen_k
            tree_curve = sweep.curve
        else:
            raw = mine(dataset, int(config.trees), config.seed)
            jep_set, counts = select_and_aggregate(raw, dataset)
            resolved_trees = int(config.trees)
            tree_curve = [(resolved_trees, jep_set.coverage)]
        if config.dump_raw_patterns:
            lines = [
                json.dumps(
                    {
                        "id": p.id,
                        "class": dataset.classes[p.class_id],
                        "selectors": [
                            {
                                "variable": dataset.variable_names[v],
                                "low": low,
                                "high": high,
                            }
                            for v, (low, high) in sorted(p.selectors.items())
                        ],
                        "support_count": len(p.supported_rows),
                    }
                )
                for p in raw
            ]
            Path(config.dump_raw_patterns).write_text(
                "\n".join(lines) + "\n", encoding="utf-8"
            )
        _verify_selection(dataset, jep_set, counts)

    with _stage("explain", timings):
        model = build_matrix_model(
            jep_set, dataset, MatrixOptions(bins=config.histogram_bins)
        )
        files[artifacts.PATTERNS_FILE] = artifacts.dumps(
            _patterns_payload(dataset, jep_set)
        )
        files[artifacts.MATRIX_FILE] = artifacts.dumps(model.to_json_dict())

    embeddings: list[EmbeddingResult] = []
    resolved_blend: float | None = None
    recommended: float | None = None
    if config.embed_enabled:
        with _stage("embed", timings):
            extended = extend(dataset, jep_set)
            reference = pairwise_distances(weight(extended, 0.0))
            if config.blend == "auto":
                grid = config.blend_grid or default_lambda_grid()
                embeddings, recommended = sweep_lambda(dataset, jep_set, grid)
                resolved_blend = recommended
            else:
                resolved_blend = float(config.blend)
                embeddings = [
                    embed_at(
                        dataset,
                        jep_set,
                        resolved_blend,
                        extended=extended,
                        reference_distances=reference,
                    )
                ]
            for emb in embeddings:
                payload = _map_payload(dataset, emb, extended.row_pattern_ids)
                name = f"{artifacts.MAPS_DIR}/{artifacts.lambda_file_name(emb.lam)}"
                files[name] = artifacts.dumps(payload)
                if emb.lam == resolved_blend:
                    files[artifacts.MAP_FILE] = artifacts.dumps(payload)

    with _stage("emit", timings):
        sweep_payload = {
            "schema_version": artifacts.SCHEMA_VERSION,
            "lambda_curve": [
                {
                    "lambda": emb.lam,
                    "stress": emb.stress,
                    "silhouette_inverted": emb.silhouette_inverted,
                }
                for emb in embeddings
            ],
            "recommended_lambda": recommended,
            "tree_curve": [
                {"trees": k, "coverage": cov} for k, cov in tree_curve
            ],
            "chosen_trees": resolved_trees,
        }
        files[artifacts.SWEEP_FILE] = artifacts.dumps(sweep_payload)
        manifest = {
            "schema_version": artifacts.SCHEMA_VERSION,
            "input": str(config.input_path),
            "label_column": config.label_column,
            "seed": config.seed,
            "trees_mode": config.trees if config.trees == "auto" else "fixed",
            "lambda_mode": config.blend if config.blend == "auto" else "fixed",
            "resolved_trees": resolved_trees,
            "resolved_lambda": resolved_blend,
            "discretize_bins": config.discretize_bins,
            "histogram_bins": config.histogram_bins,
            "n_rows": dataset.n_rows,
            "n_variables": dataset.n_variables,
            "classes": list(dataset.classes),
            "dropped_missing": report.dropped_missing,
            "dropped_ambiguous": report.dropped_ambiguous,
            "counts": {
                "raw_patterns": counts.raw,
                "selected": counts.selected,
                "aggregated": counts.aggregated,
                "discarded": counts.discarded,
            },
            "coverage": jep_set.coverage,
            "dataset_fingerprint": artifacts.fingerprint(canonical.encode("utf-8")),
        }
        files[artifacts.MANIFEST_FILE] = artifacts.dumps(manifest)
        files[artifacts.DATASET_FILE] = canonical
        artifacts.write_artifacts(config.out_dir, files)
        # Wall-clock sidecar; intentionally outside the deterministic set.
        (Path(config.out_dir) / artifacts.TIMINGS_FILE).write_text(
            artifacts.dumps({"seconds": timings}), encoding="utf-8"
        )

    return RunResult(
        out_dir=Path(config.out_dir),
        manifest=manifest,
        dataset=dataset,
        report=report,
        jep_set=jep_set,
        counts=counts,
        model=model,
        embeddings=embeddings,
        resolved_blend=resolved_blend,
    )


def _verify_selection(
    dataset: Dataset, jep_set: JepSet, counts: SelectionCounts
) -> None:
    """Cheap post-selection invariant checks; failures are bugs (exit 3)."""
    if counts.selected + counts.aggregated + counts.discarded != counts.raw:
        raise ConsistencyError("pattern accounting identity violated")
    seen = np.zeros(dataset.n_rows, dtype=bool)
    for p in jep_set.patterns:
        rows = np.asarray(p.supported_rows)
        if seen[rows].any():
            raise ConsistencyError("pattern supports an already-claimed row")
        seen[rows] = True
        if not (dataset.labels[rows] == p.class_id).all():
            raise ConsistencyError(f"pattern {p.id} is not class-pure")
        if not np.array_equal(supported_row_indices(dataset, p.selectors), rows):
            raise ConsistencyError(f"pattern {p.id} selectors do not match its rows")


def load_artifact_dataset(artifacts_dir: str | Path) -> Dataset:
    manifest = artifacts.load_json(Path(artifacts_dir) / artifacts.MANIFEST_FILE)
    return load_canonical_csv(
        Path(artifacts_dir) / artifacts.DATASET_FILE,
        manifest["label_column"],
        classes_order=manifest["classes"],
    )


def explain_instances(
    artifacts_dir: str | Path, instance_ids: list[int]
) -> dict:
    """Look up the (unique) supporting pattern of each instance.

    Unknown ids are input errors; known-but-unsupported instances are
    reported with a null pattern.
    """
    artifacts_dir = Path(artifacts_dir)
    payload = artifacts.load_json(artifacts_dir / artifacts.PATTERNS_FILE)
    dataset = load_artifact_dataset(artifacts_dir)
    known = set(dataset.instance_ids)
    unknown = [iid for iid in instance_ids if iid not in known]
    if unknown:
        raise InputError(f"unknown instance ids: {unknown}")
    by_instance: dict[int, dict] = {}
    for row in payload["patterns"]:
        for iid in row["supported_instance_ids"]:
            by_instance[iid] = row
    instances = []
    pattern_ids: list[int] = []
    for iid in instance_ids:
        row = by_instance.get(iid)
        instances.append(
            {
                "instance_id": iid,
                "pattern_id": None if row is None else row["id"],
                "pattern": row,
            }
        )
        if row is not None and row["id"] not in pattern_ids:
            pattern_ids.append(row["id"])
    return {"instances": instances, "pattern_ids": pattern_ids}
