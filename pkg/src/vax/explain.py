"""Matrix view-model: histograms, variable importance, ordering, filtering.

All histograms for one variable share a single set of bin edges computed
from the full column (Freedman-Diaconis by default), which makes local and
global distributions directly comparable cell by cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .errors import ConsistencyError, InputError
from .jep import FET_SIGNIFICANCE, JepSet, Pattern

ORDER_KEYS = ("support", "class", "class_and_support")


def freedman_diaconis_bins(values: np.ndarray) -> int:
    """Bin count from the Freedman-Diaconis width 2*IQR*n^(-1/3).

    Degenerate spreads (zero IQR or constant data) collapse to one bin.
    """
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise InputError("need at least 2 values to choose a bin count")
    iqr = float(np.percentile(values, 75) - np.percentile(values, 25))
    spread = float(values.max() - values.min())
    if iqr == 0.0 or spread == 0.0:
        return 1
    width = 2.0 * iqr * len(values) ** (-1.0 / 3.0)
    return max(1, math.ceil(spread / width))


def histogram_edges(dataset: Dataset, variable: int, bins: int | None = None) -> np.ndarray:
    """Shared bin edges for one variable over its full observed range."""
    low, high = dataset.variable_ranges[variable]
    if bins is None:
        bins = freedman_diaconis_bins(dataset.instances[:, variable])
    if low == high:
        return np.array([low - 0.5, high + 0.5])
    return np.linspace(low, high, bins + 1)


def histogram_counts(values: np.ndarray, edges: np.ndarray) -> np.ndarray:
    counts, _ = np.histogram(values, bins=edges)
    return counts


@dataclass
class Histogram:
    variable: int
    bin_edges: np.ndarray
    counts: np.ndarray  # (bins,) local or (classes, bins) global

    @property
    def max_count(self) -> int:
        return int(self.counts.max()) if self.counts.size else 0


def variable_importance(jep_set: JepSet, dataset: Dataset) -> np.ndarray:
    """Per-variable sum of supports over patterns selecting the variable,
    min-max normalized so the top variable scores 1.0."""
    if not jep_set.patterns:
        raise InputError("variable importance is undefined for an empty pattern set")
    raw = np.zeros(dataset.n_variables)
    for p in jep_set.patterns:
        for variable in p.selectors:
            raw[variable] += p.support
    low, high = raw.min(), raw.max()
    if high == low:
        return np.ones_like(raw)
    return (raw - low) / (high - low)


def cumulative_coverage(jep_set: JepSet, order: list[int]) -> list[float]:
    """Running fraction of all rows covered, reading patterns in ``order``."""
    if sorted(order) != list(range(len(jep_set.patterns))):
        raise InputError("order is not a permutation of the pattern indices")
    covered = 0
    out: list[float] = []
    for idx in order:
        covered += len(jep_set.patterns[idx].supported_rows)
        out.append(covered / jep_set.n_rows)
    return out


def order_rows(jep_set: JepSet, key: str) -> list[int]:
    """Stable row permutation by support, class, or class-then-support."""
    if key not in ORDER_KEYS:
        raise InputError(f"unknown order key {key!r}; expected one of {ORDER_KEYS}")
    indices = list(range(len(jep_set.patterns)))
    patterns = jep_set.patterns
    if key == "support":
        return sorted(indices, key=lambda i: -patterns[i].support)
    if key == "class":
        return sorted(indices, key=lambda i: patterns[i].class_id)
    return sorted(indices, key=lambda i: (patterns[i].class_id, -patterns[i].support))


@dataclass
class FilterCriteria:
    min_support: float | None = None
    classes: list[int] | None = None
    coverage_target: float | None = None
    instance_ids: list[int] | None = None


def filter_patterns(
    jep_set: JepSet, criteria: FilterCriteria, dataset: Dataset
) -> JepSet:
    """Subset of the pattern set matching the criteria.

    min_support and classes compose conjunctively. coverage_target keeps the
    smallest support-ordered prefix reaching the target, plus any patterns
    supporting the requested instances; instance_ids alone keeps exactly the
    supporting patterns.
    """
    patterns = jep_set.patterns
    keep = set(range(len(patterns)))
    if criteria.classes is not None:
        keep &= {i for i in keep if patterns[i].class_id in criteria.classes}
    if criteria.min_support is not None:
        keep &= {i for i in keep if patterns[i].support >= criteria.min_support}

    instance_matches: set[int] | None = None
    if criteria.instance_ids is not None:
        known = set(dataset.instance_ids)
        unknown = [iid for iid in criteria.instance_ids if iid not in known]
        if unknown:
            raise InputError(f"unknown instance ids: {unknown}")
        wanted_rows = {
            dataset.instance_ids.index(iid) for iid in criteria.instance_ids
        }
        instance_matches = {
            i
            for i in range(len(patterns))
            if wanted_rows.intersection(patterns[i].supported_rows)
        }

    if criteria.coverage_target is not None:
        prefix: set[int] = set()
        covered = 0.0
        for i in sorted(keep, key=lambda i: (-patterns[i].support, i)):
            if covered >= criteria.coverage_target:
                break
            prefix.add(i)
            covered += len(patterns[i].supported_rows) / jep_set.n_rows
        keep = prefix | (instance_matches & keep if instance_matches else set())
    elif instance_matches is not None:
        keep &= instance_matches

    selected = [patterns[i] for i in range(len(patterns)) if i in keep]
    return JepSet(selected, jep_set.n_rows)


@dataclass
class ExplanationModel:
    """Everything the matrix rendering needs, in raw counts."""

    jep_set: JepSet
    dataset: Dataset
    edges: list[np.ndarray]
    global_histograms: list[list[np.ndarray]]  # [class][variable] -> counts
    local_histograms: dict[tuple[int, int], np.ndarray]  # (pattern idx, variable)
    importance: np.ndarray
    fet_significant: list[bool]
    row_order: list[int]
    column_order: list[int]
    row_order_key: str = "support"

    def to_json_dict(self) -> dict:
        dataset = self.dataset
        variables = [
            {
                "name": dataset.variable_names[v],
                "index": int(v),
                "importance": float(self.importance[v]),
                "edges": [float(e) for e in self.edges[v]],
            }
            for v in self.column_order
        ]
        global_histograms = [
            {
                "class": dataset.classes[c],
                "variable": dataset.variable_names[v],
                "counts": [int(n) for n in self.global_histograms[c][v]],
            }
            for c in range(len(dataset.classes))
            for v in self.column_order
        ]
        rows = []
        coverage = cumulative_coverage(self.jep_set, self.row_order)
        for position, idx in enumerate(self.row_order):
            p = self.jep_set.patterns[idx]
            cells = [
                {
                    "variable": dataset.variable_names[v],
                    "counts": [int(n) for n in self.local_histograms[(idx, v)]],
                }
                for v in self.column_order
                if (idx, v) in self.local_histograms
            ]
            rows.append(
                {
                    "pattern_id": p.id,
                    "class": dataset.classes[p.class_id],
                    "support": p.support,
                    "cumulative_coverage": coverage[position],
                    "fet_significant": self.fet_significant[idx],
                    "cells": cells,
                }
            )
        return {
            "classes": list(dataset.classes),
            "variables": variables,
            "global_histograms": global_histograms,
            "rows": rows,
            "order": {"rows": self.row_order_key, "columns": "importance"},
        }


def local_histogram(
    dataset: Dataset, pattern: Pattern, variable: int, edges: np.ndarray
) -> np.ndarray:
    """On-demand local histogram for any variable of a pattern."""
    rows = np.asarray(pattern.supported_rows)
    return histogram_counts(dataset.instances[rows, variable], edges)


@dataclass
class MatrixOptions:
    bins: int | None = None
    include_all_cells: bool = False
    row_order_key: str = "support"


def build_matrix_model(
    jep_set: JepSet, dataset: Dataset, options: MatrixOptions | None = None
) -> ExplanationModel:
    """Assemble global/local histograms, importance, order, and FET flags.

    Local histograms default to the pattern's selector variables only; the
    remaining cells stay empty and can be computed on demand with
    :func:`local_histogram` using the shared edges.
    """
    options = options or MatrixOptions()
    edges = [
        histogram_edges(dataset, v, options.bins) for v in range(dataset.n_variables)
    ]
    global_histograms: list[list[np.ndarray]] = []
    for c in range(len(dataset.classes)):
        class_rows = np.flatnonzero(dataset.labels == c)
        global_histograms.append(
            [
                histogram_counts(dataset.instances[class_rows, v], edges[v])
                for v in range(dataset.n_variables)
            ]
        )
    local_histograms: dict[tuple[int, int], np.ndarray] = {}
    for idx, p in enumerate(jep_set.patterns):
        variables = (
            range(dataset.n_variables) if options.include_all_cells else sorted(p.selectors)
        )
        for v in variables:
            counts = local_histogram(dataset, p, v, edges[v])
            if int(counts.sum()) != len(p.supported_rows):
                raise ConsistencyError(
                    f"histogram of pattern {p.id} lost rows on variable {v}"
                )
            local_histograms[(idx, v)] = counts
    importance = variable_importance(jep_set, dataset)
    fet_flags = [
        p.fet_p is not None and p.fet_p < FET_SIGNIFICANCE for p in jep_set.patterns
    ]
    row_order = order_rows(jep_set, options.row_order_key)
    column_order = sorted(range(dataset.n_variables), key=lambda v: -importance[v])
    return ExplanationModel(
        jep_set=jep_set,
        dataset=dataset,
        edges=edges,
        global_histograms=global_histograms,
        local_histograms=local_histograms,
        importance=importance,
        fet_significant=fet_flags,
        row_order=row_order,
        column_order=column_order,
        row_order_key=options.row_order_key,
    )
