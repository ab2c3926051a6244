"""Pattern metrics and the greedy selection/aggregation of jumping patterns.

A jumping pattern supports instances of exactly one class: confidence 1.0,
growth rate infinity. Candidates are processed from highest to lowest
support; a surviving candidate claims its rows and absorbs every remaining
pattern supporting the identical row set by intersecting selector intervals,
so the final set covers each instance at most once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .dataset import ClassPartition, Dataset
from .errors import ConsistencyError, InputError
from .forest import RawPattern

FET_SIGNIFICANCE = 0.05


@dataclass
class Pattern:
    """Selected (possibly aggregated) pattern with cached metrics."""

    id: int
    selectors: dict[int, tuple[float, float]]
    class_id: int
    supported_rows: tuple[int, ...]
    support: float
    growth_rate: float
    confidence: float
    fet_p: float | None = None
    aggregated_from: int = 1


@dataclass
class JepSet:
    """Ordered selection result; supported row sets are pairwise disjoint."""

    patterns: list[Pattern]
    n_rows: int
    coverage: float = field(init=False)
    cumulative_coverage: list[float] = field(init=False)

    def __post_init__(self) -> None:
        covered = 0
        running: list[float] = []
        for p in self.patterns:
            covered += len(p.supported_rows)
            running.append(covered / self.n_rows)
        self.coverage = covered / self.n_rows if self.patterns else 0.0
        self.cumulative_coverage = running


def supported_row_indices(
    dataset: Dataset, selectors: dict[int, tuple[float, float]]
) -> np.ndarray:
    """Rows satisfying every selector (vacuous conjunction: all rows)."""
    mask = np.ones(dataset.n_rows, dtype=bool)
    for variable, (low, high) in selectors.items():
        column = dataset.instances[:, variable]
        mask &= (column >= low) & (column <= high)
    return np.flatnonzero(mask)


def _count_supported(
    dataset: Dataset, selectors: dict[int, tuple[float, float]], rows: np.ndarray
) -> int:
    if len(rows) == 0:
        return 0
    mask = np.ones(len(rows), dtype=bool)
    for variable, (low, high) in selectors.items():
        column = dataset.instances[rows, variable]
        mask &= (column >= low) & (column <= high)
    return int(mask.sum())


def support(
    dataset: Dataset,
    selectors: dict[int, tuple[float, float]],
    rows: np.ndarray | ClassPartition,
) -> float:
    """Fraction of the given rows satisfying all selectors."""
    if isinstance(rows, ClassPartition):
        rows = rows.member_row_indices
    rows = np.asarray(rows)
    if len(rows) == 0:
        raise InputError("support is undefined on an empty partition")
    return _count_supported(dataset, selectors, rows) / len(rows)


def growth_rate(
    dataset: Dataset,
    selectors: dict[int, tuple[float, float]],
    target_rows: np.ndarray,
    complement_rows: np.ndarray,
) -> float:
    """Support ratio target/complement; 0 when both vanish, inf when only
    the complement support does."""
    target_rows = np.asarray(target_rows)
    complement_rows = np.asarray(complement_rows)
    if np.intersect1d(target_rows, complement_rows).size:
        raise InputError("growth rate requires disjoint partitions")
    supp_target = support(dataset, selectors, target_rows)
    supp_complement = support(dataset, selectors, complement_rows)
    if supp_complement == 0.0:
        return 0.0 if supp_target == 0.0 else math.inf
    return supp_target / supp_complement


def confidence(
    dataset: Dataset,
    selectors: dict[int, tuple[float, float]],
    target_rows: np.ndarray,
    complement_rows: np.ndarray,
) -> float:
    """Precision of the pattern for the target class among supported rows."""
    target_rows = np.asarray(target_rows)
    complement_rows = np.asarray(complement_rows)
    if np.intersect1d(target_rows, complement_rows).size:
        raise InputError("confidence requires disjoint partitions")
    count_target = _count_supported(dataset, selectors, target_rows)
    count_complement = _count_supported(dataset, selectors, complement_rows)
    total = count_target + count_complement
    if total == 0:
        raise InputError("confidence is undefined for a pattern supporting no rows")
    return count_target / total


def fisher_exact_pvalue(
    supported_target: int,
    supported_other: int,
    target_total: int,
    other_total: int,
) -> float:
    """One-sided exact p-value for overrepresentation of the target class
    among supported rows (hypergeometric upper tail), via exact integer
    arithmetic."""
    if target_total <= 0 or other_total <= 0:
        raise InputError("degenerate 2x2 table: an empty partition")
    if not (0 <= supported_target <= target_total):
        raise InputError("supported_target outside [0, target_total]")
    if not (0 <= supported_other <= other_total):
        raise InputError("supported_other outside [0, other_total]")
    population = target_total + other_total
    draws = supported_target + supported_other
    k_max = min(draws, target_total)
    numerator = sum(
        comb(target_total, j) * comb(other_total, draws - j)
        for j in range(supported_target, k_max + 1)
        if draws - j <= other_total
    )
    return numerator / comb(population, draws)


def fisher_exact(
    dataset: Dataset,
    selectors: dict[int, tuple[float, float]],
    target_rows: np.ndarray,
    complement_rows: np.ndarray,
) -> float:
    """FET p-value of the pattern/class association (see
    :func:`fisher_exact_pvalue`)."""
    target_rows = np.asarray(target_rows)
    complement_rows = np.asarray(complement_rows)
    return fisher_exact_pvalue(
        _count_supported(dataset, selectors, target_rows),
        _count_supported(dataset, selectors, complement_rows),
        len(target_rows),
        len(complement_rows),
    )


def aggregate_selectors(
    pivot: dict[int, tuple[float, float]],
    other: dict[int, tuple[float, float]],
    dataset: Dataset,
) -> dict[int, tuple[float, float]]:
    """Intersect two selector maps variable-wise.

    A variable present in only one map is intersected against the full
    observed range of that variable, so the result constrains the union of
    both variable sets without changing the supported rows.
    """
    merged: dict[int, tuple[float, float]] = {}
    for variable in sorted(set(pivot) | set(other)):
        full = dataset.variable_ranges[variable]
        a_low, a_high = pivot.get(variable, full)
        b_low, b_high = other.get(variable, full)
        low, high = max(a_low, b_low), min(a_high, b_high)
        if low > high:
            raise ConsistencyError(
                f"empty selector intersection on variable {variable}"
            )
        merged[variable] = (low, high)
    return merged


@dataclass
class SelectionCounts:
    raw: int
    selected: int
    aggregated: int
    discarded: int


def _ordering_key(dataset: Dataset, p: RawPattern, class_sizes: np.ndarray):
    rows = np.asarray(p.supported_rows)
    in_class = int((dataset.labels[rows] == p.class_id).sum()) if len(rows) else 0
    supp = in_class / class_sizes[p.class_id]
    # Higher support first; ties: larger row count, lower class, lower id.
    return (-supp, -len(rows), p.class_id, p.id)


def select_and_aggregate(
    raw: list[RawPattern], dataset: Dataset
) -> tuple[JepSet, SelectionCounts]:
    """Greedy selection over raw patterns ordered by decreasing support.

    A candidate is discarded when its confidence is not exactly 1.0 or when
    it supports any already-claimed row; otherwise it becomes a pivot,
    claims its rows, and absorbs every remaining pattern whose supported-row
    set equals its own. Patterns with equal row sets necessarily share
    confidence and support, so grouping them up front is behaviorally
    identical to the scan in the pseudocode this follows.
    """
    class_sizes = np.array([dataset.class_size(c) for c in range(len(dataset.classes))])
    order = sorted(range(len(raw)), key=lambda i: _ordering_key(dataset, raw[i], class_sizes))

    groups: dict[tuple[int, ...], list[int]] = {}
    for i in order:
        groups.setdefault(raw[i].supported_rows, []).append(i)

    claimed = np.zeros(dataset.n_rows, dtype=bool)
    consumed = [False] * len(raw)
    selected: list[Pattern] = []
    counts = SelectionCounts(raw=len(raw), selected=0, aggregated=0, discarded=0)

    for i in order:
        if consumed[i]:
            continue
        consumed[i] = True
        p = raw[i]
        rows = np.asarray(p.supported_rows)
        in_class = int((dataset.labels[rows] == p.class_id).sum()) if len(rows) else 0
        if len(rows) == 0 or in_class != len(rows):
            counts.discarded += 1
            continue
        if claimed[rows].any():
            counts.discarded += 1
            continue
        claimed[rows] = True
        selectors = dict(p.selectors)
        merged_count = 1
        for j in groups[p.supported_rows]:
            if j == i or consumed[j]:
                continue
            consumed[j] = True
            selectors = aggregate_selectors(selectors, raw[j].selectors, dataset)
            merged_count += 1
            counts.aggregated += 1
        scan = supported_row_indices(dataset, selectors)
        if not np.array_equal(scan, rows):
            raise ConsistencyError(
                f"aggregated selectors of pattern {p.id} changed its supported rows"
            )
        supp = in_class / class_sizes[p.class_id]
        selected.append(
            Pattern(
                id=p.id,
                selectors=selectors,
                class_id=p.class_id,
                supported_rows=p.supported_rows,
                support=float(supp),
                growth_rate=math.inf,
                confidence=1.0,
                aggregated_from=merged_count,
            )
        )
        counts.selected += 1

    jep_set = JepSet(selected, dataset.n_rows)
    attach_fet(jep_set, dataset)
    return jep_set, counts


def attach_fet(jep_set: JepSet, dataset: Dataset) -> None:
    """Fill in the FET p-value for every selected pattern (selected-only;
    discarded candidates never get one)."""
    class_sizes = [dataset.class_size(c) for c in range(len(dataset.classes))]
    total = dataset.n_rows
    for p in jep_set.patterns:
        target_total = class_sizes[p.class_id]
        p.fet_p = fisher_exact_pvalue(
            len(p.supported_rows), 0, target_total, total - target_total
        )
