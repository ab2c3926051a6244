"""Seeded synthetic dataset generators for demos, fixtures, and tests."""

from __future__ import annotations

import numpy as np

from .dataset import Dataset


def five_class_blobs(
    seed: int = 0, per_class: int = 100, spread: float = 4.0
) -> Dataset:
    """Two-variable, five-class benchmark covering the interesting regimes:
    classes A and B strongly overlap, C and D are adjacent, E is isolated
    (also along the first variable alone)."""
    rng = np.random.default_rng(seed)
    centers = {
        "A": (30.0, 60.0),
        "B": (32.0, 62.0),
        "C": (30.0, 20.0),
        "D": (42.0, 20.0),
        "E": (105.0, 86.0),
    }
    spreads = {"A": spread * 2.0, "B": spread * 2.0, "C": spread, "D": spread, "E": spread}
    points: list[np.ndarray] = []
    labels: list[int] = []
    for class_id, name in enumerate(centers):
        cx, cy = centers[name]
        block = rng.normal((cx, cy), spreads[name], size=(per_class, 2))
        points.append(block)
        labels.extend([class_id] * per_class)
    instances = np.vstack(points)
    return Dataset(
        instances=np.round(instances, 6),
        variable_names=["var_1", "var_2"],
        labels=np.array(labels),
        classes=list(centers),
        instance_ids=list(range(instances.shape[0])),
        label_name="class",
    )


def random_blob_dataset(
    seed: int,
    n_rows: int = 200,
    n_variables: int = 4,
    n_classes: int = 3,
    overlap: float = 0.6,
) -> Dataset:
    """Randomized labeled blobs with controllable class overlap."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(0.0, 10.0, size=(n_classes, n_variables))
    sizes = np.full(n_classes, n_rows // n_classes)
    sizes[: n_rows % n_classes] += 1
    points: list[np.ndarray] = []
    labels: list[int] = []
    for c in range(n_classes):
        block = rng.normal(centers[c], overlap, size=(sizes[c], n_variables))
        points.append(block)
        labels.extend([c] * sizes[c])
    instances = np.round(np.vstack(points), 6)
    return Dataset(
        instances=instances,
        variable_names=[f"v{j}" for j in range(n_variables)],
        labels=np.array(labels),
        classes=[f"c{j}" for j in range(n_classes)],
        instance_ids=list(range(n_rows)),
        label_name="class",
    )
