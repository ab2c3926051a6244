"""Stable JSON artifact emission and loading.

Artifacts are deterministic for a fixed (config, seed): dictionaries are
built in a fixed key order, floats serialize via repr, and nothing
wall-clock-dependent is written to the deterministic set.
"""

from __future__ import annotations

import hashlib
import json
import os
from pathlib import Path

from .errors import InputError

SCHEMA_VERSION = 1

PATTERNS_FILE = "patterns.json"
MATRIX_FILE = "matrix.json"
MAP_FILE = "map.json"
SWEEP_FILE = "sweep.json"
MANIFEST_FILE = "manifest.json"
DATASET_FILE = "dataset.csv"
MAPS_DIR = "maps"
TIMINGS_FILE = "timings.json"


def dumps(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def write_artifacts(out_dir: str | Path, files: dict[str, str]) -> None:
    """Write every artifact atomically (temp file + rename) so a failed run
    leaves no partial artifacts behind."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    staged: list[tuple[Path, Path]] = []
    try:
        for name, content in files.items():
            final = out / name
            final.parent.mkdir(parents=True, exist_ok=True)
            tmp = final.with_suffix(final.suffix + ".tmp")
            tmp.write_text(content, encoding="utf-8")
            staged.append((tmp, final))
        for tmp, final in staged:
            os.replace(tmp, final)
    except BaseException:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)
        raise


def load_json(path: str | Path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError(f"missing artifact: {path}")
    with path.open(encoding="utf-8") as handle:
        return json.load(handle)


def fingerprint(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def lambda_file_name(lam: float) -> str:
    return f"map_{format(lam, '.4f')}.json"
