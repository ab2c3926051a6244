"""Ingestion, encoding, and partitioning of class-labeled tabular data.

A :class:`Dataset` is the immutable input every downstream stage works on:
numeric-encoded variables, per-row class labels, and stable instance ids.
Ingestion drops rows with missing values and removes ambiguous instances
(identical variable vectors carrying different labels), which is what makes
fully class-pure decision trees attainable later in the pipeline.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import InputError

MISSING_TOKENS = {"", "na", "nan", "null", "none"}


def _is_missing(cell: str) -> bool:
    return cell.strip().lower() in MISSING_TOKENS


def _parse_number(cell: str) -> float | None:
    try:
        return float(cell)
    except ValueError:
        return None


@dataclass
class IngestConfig:
    drop_ambiguous: bool = True
    discretize_bins: int | None = None
    id_column: str | None = None


@dataclass
class IngestReport:
    dropped_missing: int = 0
    dropped_ambiguous: int = 0


@dataclass
class ClassPartition:
    """One-vs-all split of row indices for a single class."""

    class_id: int
    member_row_indices: np.ndarray
    complement_row_indices: np.ndarray


@dataclass
class Dataset:
    """Numeric-encoded labeled table.

    ``instances`` is an (N, M) float matrix; categorical variables are
    integer-encoded by sorted distinct value with the original strings kept
    in ``encodings`` for display. ``instance_ids`` survive row filtering, so
    artifacts can always refer back to source rows.
    """

    instances: np.ndarray
    variable_names: list[str]
    labels: np.ndarray
    classes: list[str]
    instance_ids: list[int]
    label_name: str
    encodings: dict[str, list[str]] = field(default_factory=dict)
    variable_ranges: list[tuple[float, float]] = field(init=False)

    def __post_init__(self) -> None:
        self.instances = np.ascontiguousarray(self.instances, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        self.instances.setflags(write=False)
        self.labels.setflags(write=False)
        if self.instances.ndim != 2:
            raise InputError("instances must be a 2-d matrix")
        self.variable_ranges = [
            (float(col.min()), float(col.max())) for col in self.instances.T
        ]

    @property
    def n_rows(self) -> int:
        return self.instances.shape[0]

    @property
    def n_variables(self) -> int:
        return self.instances.shape[1]

    def class_size(self, class_id: int) -> int:
        return int(np.count_nonzero(self.labels == class_id))

    def decode_value(self, variable: int, value: float) -> str:
        """Original display string for an encoded cell value."""
        name = self.variable_names[variable]
        table = self.encodings.get(name)
        if table is None:
            return repr(float(value))
        return table[int(value)]


def ingest_csv(
    path: str | Path,
    label_column: str,
    config: IngestConfig | None = None,
) -> tuple[Dataset, IngestReport]:
    """Read an RFC-4180 CSV with a header row into a validated Dataset.

    Rows with any missing cell are dropped first; categorical columns are
    integer-encoded by sorted distinct string; ambiguous rows (equal vectors,
    different labels) are removed when ``config.drop_ambiguous`` is set and
    rejected otherwise. With ``config.discretize_bins`` the (numeric) label
    column is binned equal-width into that many classes.
    """
    config = config or IngestConfig()
    try:
        text = Path(path).read_text(encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows:
        raise InputError(f"{path}: empty file")
    header, records = rows[0], rows[1:]
    if label_column not in header:
        raise InputError(f"label column {label_column!r} not found in header")
    label_idx = header.index(label_column)
    id_idx = None
    if config.id_column is not None:
        if config.id_column not in header:
            raise InputError(f"id column {config.id_column!r} not found in header")
        id_idx = header.index(config.id_column)

    variable_names = [
        name for i, name in enumerate(header) if i not in (label_idx, id_idx)
    ]
    if not variable_names:
        raise InputError("no variable columns besides label/id")
    var_indices = [i for i in range(len(header)) if i not in (label_idx, id_idx)]

    report = IngestReport()
    kept: list[list[str]] = []
    kept_ids: list[int] = []
    for row_number, record in enumerate(records):
        if len(record) != len(header):
            raise InputError(
                f"row {row_number + 2}: expected {len(header)} cells, got {len(record)}"
            )
        if any(_is_missing(record[i]) for i in range(len(header)) if i != id_idx):
            report.dropped_missing += 1
            continue
        kept.append(record)
        if id_idx is not None:
            parsed = _parse_number(record[id_idx])
            if parsed is None:
                raise InputError(f"row {row_number + 2}: non-numeric instance id")
            kept_ids.append(int(parsed))
        else:
            kept_ids.append(row_number)
    if not kept:
        raise InputError("zero rows after cleaning")

    # Column typing over surviving rows: numeric iff every cell parses.
    encodings: dict[str, list[str]] = {}
    matrix = np.empty((len(kept), len(var_indices)), dtype=float)
    for out_col, src_col in enumerate(var_indices):
        cells = [record[src_col] for record in kept]
        numbers = [_parse_number(c) for c in cells]
        if all(v is not None for v in numbers):
            matrix[:, out_col] = numbers
        else:
            table = sorted(set(cells))
            encodings[header[src_col]] = table
            codes = {value: code for code, value in enumerate(table)}
            matrix[:, out_col] = [codes[c] for c in cells]

    label_cells = [record[label_idx] for record in kept]
    if config.discretize_bins is not None:
        numbers = [_parse_number(c) for c in label_cells]
        if any(v is None for v in numbers):
            raise InputError("discretization requires a numeric label column")
        label_ids, _ = discretize_target(np.array(numbers), config.discretize_bins)
        classes = [f"bin_{i}" for i in range(config.discretize_bins)]
    else:
        classes = []
        label_ids = np.empty(len(kept), dtype=int)
        for i, cell in enumerate(label_cells):
            if cell not in classes:
                classes.append(cell)
            label_ids[i] = classes.index(cell)

    # Ambiguity: identical encoded vectors carrying different labels.
    by_vector: dict[tuple[float, ...], set[int]] = {}
    for i in range(len(kept)):
        by_vector.setdefault(tuple(matrix[i]), set()).add(int(label_ids[i]))
    ambiguous = {vec for vec, labels in by_vector.items() if len(labels) > 1}
    if ambiguous:
        if not config.drop_ambiguous:
            raise InputError(
                "dataset contains ambiguous instances and --drop-ambiguous is off"
            )
        keep_mask = np.array([tuple(matrix[i]) not in ambiguous for i in range(len(kept))])
        report.dropped_ambiguous = int((~keep_mask).sum())
        matrix = matrix[keep_mask]
        label_ids = label_ids[keep_mask]
        kept_ids = [kid for kid, keep in zip(kept_ids, keep_mask) if keep]

    if matrix.shape[0] < 2:
        raise InputError("fewer than 2 rows after cleaning")

    # Classes present after cleaning, in first-appearance order (bin order
    # when discretizing; empty bins are dropped).
    present = sorted(set(int(l) for l in label_ids))
    if len(present) < 2:
        raise InputError("fewer than 2 classes after cleaning")
    remap = {old: new for new, old in enumerate(present)}
    classes = [classes[old] for old in present]
    label_ids = np.array([remap[int(l)] for l in label_ids])

    dataset = Dataset(
        instances=matrix,
        variable_names=variable_names,
        labels=label_ids,
        classes=classes,
        instance_ids=kept_ids,
        label_name=label_column,
        encodings=encodings,
    )
    return dataset, report


def discretize_target(values: np.ndarray, bins: int) -> tuple[np.ndarray, np.ndarray]:
    """Equal-width binning of a continuous target into class labels.

    Returns (per-row class ids, bin edges of length bins+1). The last bin is
    right-inclusive so the maximum lands in bin ``bins - 1``.
    """
    values = np.asarray(values, dtype=float)
    if bins < 2:
        raise InputError("discretization needs at least 2 bins")
    vmin, vmax = float(values.min()), float(values.max())
    if vmin == vmax:
        raise InputError("cannot discretize a constant target")
    width = (vmax - vmin) / bins
    ids = np.clip(((values - vmin) / width).astype(int), 0, bins - 1)
    edges = vmin + width * np.arange(bins + 1)
    edges[-1] = vmax
    return ids, edges


def partition(dataset: Dataset, class_id: int) -> ClassPartition:
    """One-vs-all row split for ``class_id``."""
    if not 0 <= class_id < len(dataset.classes):
        raise InputError(f"unknown class id {class_id}")
    members = np.flatnonzero(dataset.labels == class_id)
    complement = np.flatnonzero(dataset.labels != class_id)
    return ClassPartition(class_id, members, complement)


def to_canonical_csv(dataset: Dataset) -> str:
    """Serialize a Dataset so that re-ingesting reproduces it exactly.

    Categorical codes are written back as their original strings; numeric
    cells use shortest round-trip float repr; instance ids ride along in an
    ``instance_id`` column.
    """
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["instance_id", *dataset.variable_names, dataset.label_name])
    for i in range(dataset.n_rows):
        cells: list[str] = [str(dataset.instance_ids[i])]
        for j, name in enumerate(dataset.variable_names):
            value = dataset.instances[i, j]
            if name in dataset.encodings:
                cells.append(dataset.encodings[name][int(value)])
            else:
                cells.append(repr(float(value)))
        cells.append(dataset.classes[int(dataset.labels[i])])
        writer.writerow(cells)
    return out.getvalue()


def write_canonical_csv(dataset: Dataset, path: str | Path) -> None:
    Path(path).write_text(to_canonical_csv(dataset), encoding="utf-8")


def load_canonical_csv(
    path: str | Path,
    label_column: str,
    classes_order: list[str] | None = None,
) -> Dataset:
    """Re-ingest a canonical CSV emitted by :func:`to_canonical_csv`.

    ``classes_order`` pins the class list (and class ids) to a recorded
    order, which matters when the original labels came from discretization
    rather than first appearance in the file.
    """
    dataset, _ = ingest_csv(path, label_column, IngestConfig(id_column="instance_id"))
    if classes_order is None or classes_order == dataset.classes:
        return dataset
    if sorted(classes_order) != sorted(dataset.classes):
        raise InputError("classes_order does not match the classes in the file")
    remap = {dataset.classes.index(name): i for i, name in enumerate(classes_order)}
    return Dataset(
        instances=dataset.instances,
        variable_names=dataset.variable_names,
        labels=np.array([remap[int(l)] for l in dataset.labels]),
        classes=list(classes_order),
        instance_ids=dataset.instance_ids,
        label_name=dataset.label_name,
        encodings=dataset.encodings,
    )
