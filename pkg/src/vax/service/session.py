"""Immutable in-memory view over one computed artifact set.

The session reconstructs the dataset and pattern set from the artifacts so
that service-side filtering and ordering go through the exact same library
calls as the CLI, and preloads every blend-weight map emitted by the run
(no scaling runs at request time).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path

from .. import artifacts
from ..dataset import Dataset
from ..errors import InputError
from ..jep import JepSet, Pattern
from ..pipeline import load_artifact_dataset


@dataclass
class Session:
    artifacts_dir: Path
    manifest: dict
    dataset: Dataset
    jep_set: JepSet
    patterns_payload: dict
    matrix_payload: dict
    sweep_payload: dict
    maps: dict[float, dict] = field(default_factory=dict)
    resolved_blend: float | None = None
    instance_to_pattern: dict[int, int] = field(default_factory=dict)

    @classmethod
    def load(cls, artifacts_dir: str | Path) -> "Session":
        root = Path(artifacts_dir)
        manifest = artifacts.load_json(root / artifacts.MANIFEST_FILE)
        patterns_payload = artifacts.load_json(root / artifacts.PATTERNS_FILE)
        matrix_payload = artifacts.load_json(root / artifacts.MATRIX_FILE)
        sweep_payload = artifacts.load_json(root / artifacts.SWEEP_FILE)
        dataset = load_artifact_dataset(root)

        row_of_id = {iid: i for i, iid in enumerate(dataset.instance_ids)}
        name_to_var = {name: i for i, name in enumerate(dataset.variable_names)}
        selected: list[Pattern] = []
        instance_to_pattern: dict[int, int] = {}
        for row in patterns_payload["patterns"]:
            selectors = {
                name_to_var[s["variable"]]: (s["low"], s["high"])
                for s in row["selectors"]
            }
            rows = tuple(sorted(row_of_id[iid] for iid in row["supported_instance_ids"]))
            selected.append(
                Pattern(
                    id=row["id"],
                    selectors=selectors,
                    class_id=dataset.classes.index(row["class"]),
                    supported_rows=rows,
                    support=row["support"],
                    growth_rate=math.inf,
                    confidence=row["confidence"],
                    fet_p=row["fet_p"],
                    aggregated_from=row["aggregated_from"],
                )
            )
            for iid in row["supported_instance_ids"]:
                instance_to_pattern[iid] = row["id"]
        jep_set = JepSet(selected, dataset.n_rows)

        maps: dict[float, dict] = {}
        maps_dir = root / artifacts.MAPS_DIR
        if maps_dir.is_dir():
            for path in sorted(maps_dir.glob("map_*.json")):
                if re.fullmatch(r"map_\d+\.\d+\.json", path.name):
                    payload = artifacts.load_json(path)
                    maps[float(payload["lambda"])] = payload
        resolved = manifest.get("resolved_lambda")
        if resolved is None and maps:
            resolved = min(maps)
        return cls(
            artifacts_dir=root,
            manifest=manifest,
            dataset=dataset,
            jep_set=jep_set,
            patterns_payload=patterns_payload,
            matrix_payload=matrix_payload,
            sweep_payload=sweep_payload,
            maps=maps,
            resolved_blend=resolved,
            instance_to_pattern=instance_to_pattern,
        )

    def nearest_map(self, lam: float) -> dict:
        if not self.maps:
            raise InputError("this artifact set was produced without embeddings")
        nearest = min(self.maps, key=lambda g: (abs(g - lam), g))
        return self.maps[nearest]
