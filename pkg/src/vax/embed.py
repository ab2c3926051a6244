"""Pattern-aware similarity maps: dataset extension, weighting, classical
MDS, and the tree-count / blend-weight heuristics.

Each instance is extended with the centroid of its pattern group, giving an
N x 2M matrix whose two blocks are blended by a weight in [0, 1]: 0 embeds
the original data only, 1 collapses every group onto its centroid. Columns
are z-scored before the blend so both blocks contribute on a comparable
scale and the weight keeps its meaning (scaling a column after z-scoring
would simply cancel).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import InputError
from .forest import RawPattern, extract_patterns, induct_forest
from .jep import JepSet, SelectionCounts, select_and_aggregate


@dataclass
class ExtendedDataset:
    """Base matrix, centroid extension, and the grouping that produced it.

    ``group_labels`` are dense ids usable for silhouette computation; rows
    unsupported by any pattern form singleton groups and carry ``None`` in
    ``row_pattern_ids``.
    """

    base: np.ndarray
    extension: np.ndarray
    group_labels: np.ndarray
    row_pattern_ids: list[int | None]


def extend(dataset: Dataset, jep_set: JepSet) -> ExtendedDataset:
    """Append per-group centroids; groups are the pattern support sets."""
    n = dataset.n_rows
    base = np.array(dataset.instances, dtype=float)
    extension = np.array(dataset.instances, dtype=float)
    group_labels = np.full(n, -1, dtype=int)
    row_pattern_ids: list[int | None] = [None] * n
    for g, pattern in enumerate(jep_set.patterns):
        rows = np.asarray(pattern.supported_rows)
        extension[rows] = base[rows].mean(axis=0)
        group_labels[rows] = g
        for r in rows:
            row_pattern_ids[r] = pattern.id
    next_group = len(jep_set.patterns)
    for r in np.flatnonzero(group_labels < 0):
        group_labels[r] = next_group
        next_group += 1
    return ExtendedDataset(base, extension, group_labels, row_pattern_ids)


def _zscore_columns(matrix: np.ndarray) -> np.ndarray:
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    out = np.zeros_like(matrix, dtype=float)
    nonconstant = std > 0
    out[:, nonconstant] = (matrix[:, nonconstant] - mean[nonconstant]) / std[nonconstant]
    return out


def weight_raw(extended: ExtendedDataset, lam: float) -> np.ndarray:
    """Blend of the unnormalized blocks: [(1-lam) * X | lam * centroid]."""
    if not 0.0 <= lam <= 1.0:
        raise InputError("blend weight must lie in [0, 1]")
    return np.hstack([(1.0 - lam) * extended.base, lam * extended.extension])


def weight(extended: ExtendedDataset, lam: float) -> np.ndarray:
    """Blend of the z-scored blocks; constant columns normalize to 0.

    The blend is kept on a weight-independent overall scale by dividing by
    hypot(1 - lam, lam); at the endpoints the divisor is 1, so weight 0
    returns exactly the z-scored data block. Without this, stress readings
    across the sweep would mostly measure the shrinking blend norm.
    """
    if not 0.0 <= lam <= 1.0:
        raise InputError("blend weight must lie in [0, 1]")
    z_base = _zscore_columns(extended.base)
    z_ext = _zscore_columns(extended.extension)
    scale = math.hypot(1.0 - lam, lam)
    return np.hstack([(1.0 - lam) * z_base, lam * z_ext]) / scale


def pairwise_distances(matrix: np.ndarray) -> np.ndarray:
    # Accumulated per dimension rather than via the Gram expansion, which
    # cancels catastrophically for nearby rows.
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    d2 = np.zeros((n, n))
    for column in matrix.T:
        diff = column[:, None] - column[None, :]
        d2 += diff * diff
    return np.sqrt(d2)


def mds(matrix: np.ndarray) -> np.ndarray:
    """Classical (Torgerson) 2-d scaling of row vectors.

    Distance matrix -> double-centered Gram matrix -> top-2 eigenpairs.
    Output is deterministic: each axis is flipped so its first nonzero
    coordinate is positive.
    """
    matrix = np.asarray(matrix, dtype=float)
    n = matrix.shape[0]
    if n < 3:
        raise InputError("classical scaling needs at least 3 rows")
    centered_rows = matrix - matrix.mean(axis=0)
    if not centered_rows.any():
        warnings.warn("all rows identical; returning a zero layout")
        return np.zeros((n, 2))
    # Identical to -1/2 J D^2 J for Euclidean distances, but without the
    # precision loss of squaring the distance matrix first.
    gram = centered_rows @ centered_rows.T
    eigenvalues, eigenvectors = np.linalg.eigh(gram)
    top = np.argsort(eigenvalues)[::-1][:2]
    coords = np.zeros((n, 2))
    for axis, idx in enumerate(top):
        value = max(float(eigenvalues[idx]), 0.0)
        column = eigenvectors[:, idx] * math.sqrt(value)
        nonzero = np.flatnonzero(np.abs(column) > 1e-12)
        if len(nonzero) and column[nonzero[0]] < 0:
            column = -column
        coords[:, axis] = column
    return coords


def kruskal_stress(high_d: np.ndarray, low_d: np.ndarray) -> float:
    """sqrt(sum((dh - dl)^2) / sum(dh^2)) over unordered pairs."""
    high_d = np.asarray(high_d, dtype=float)
    low_d = np.asarray(low_d, dtype=float)
    if high_d.shape != low_d.shape:
        raise InputError("distance sets must have matching shapes")
    if high_d.ndim == 2:
        iu = np.triu_indices(high_d.shape[0], k=1)
        high_d, low_d = high_d[iu], low_d[iu]
    denom = float((high_d**2).sum())
    if denom == 0.0:
        raise InputError("stress is undefined for all-zero reference distances")
    stress = math.sqrt(float(((high_d - low_d) ** 2).sum()) / denom)
    if stress > 1.0:
        warnings.warn(f"stress {stress:.4f} exceeds 1; clamping")
        return 1.0
    return stress


def silhouette_inverted(matrix: np.ndarray, group_labels: np.ndarray) -> float:
    """Inverted, [0, 1]-normalized silhouette; lower means tighter, better
    separated groups.

    The mean runs over all rows; rows in singleton groups contribute 0.
    """
    matrix = np.asarray(matrix, dtype=float)
    group_labels = np.asarray(group_labels)
    unique = np.unique(group_labels)
    if len(unique) < 2:
        raise InputError("silhouette needs at least 2 groups")
    d = pairwise_distances(matrix)
    n = matrix.shape[0]
    members = {g: np.flatnonzero(group_labels == g) for g in unique}
    scores = np.zeros(n)
    for i in range(n):
        own = members[group_labels[i]]
        if len(own) < 2:
            continue
        a = d[i, own].sum() / (len(own) - 1)
        b = min(
            d[i, members[g]].mean() for g in unique if g != group_labels[i]
        )
        peak = max(a, b)
        scores[i] = 0.0 if peak == 0.0 else (b - a) / peak
    sc = float(scores.mean())
    return 1.0 - (sc + 1.0) / 2.0


@dataclass
class EmbeddingResult:
    coordinates: np.ndarray
    lam: float
    stress: float
    silhouette_inverted: float


def embed_at(
    dataset: Dataset,
    jep_set: JepSet,
    lam: float,
    extended: ExtendedDataset | None = None,
    reference_distances: np.ndarray | None = None,
) -> EmbeddingResult:
    """Project the blended matrix and score it.

    Stress is measured against the z-scored original-data distances (the
    blend at weight 0), so it reads as distortion of the distances the data
    itself conveys; the inverted silhouette is measured on the blended
    high-dimensional matrix with pattern groups.
    """
    extended = extended or extend(dataset, jep_set)
    if reference_distances is None:
        reference_distances = pairwise_distances(weight(extended, 0.0))
    weighted = weight(extended, lam)
    coords = mds(weighted)
    stress = kruskal_stress(reference_distances, pairwise_distances(coords))
    sc_inv = silhouette_inverted(weighted, extended.group_labels)
    return EmbeddingResult(coords, lam, stress, sc_inv)


def default_lambda_grid() -> list[float]:
    return [round(0.05 * i, 2) for i in range(21)]


def sweep_lambda(
    dataset: Dataset, jep_set: JepSet, grid: list[float] | None = None
) -> tuple[list[EmbeddingResult], float]:
    """Embed at every grid weight and recommend argmin(stress + inverted
    silhouette); the recommendation is a starting point users may override.

    Only interior grid points are eligible recommendations: weight 0 ignores
    the patterns entirely and weight 1 stacks each group on a single map
    position, so neither yields a usable map even when it scores well.
    """
    grid = default_lambda_grid() if grid is None else list(grid)
    if not grid:
        raise InputError("empty blend-weight grid")
    if any(not 0.0 <= lam <= 1.0 for lam in grid):
        raise InputError("blend weights must lie in [0, 1]")
    extended = extend(dataset, jep_set)
    reference = pairwise_distances(weight(extended, 0.0))
    results = [
        embed_at(dataset, jep_set, lam, extended=extended, reference_distances=reference)
        for lam in grid
    ]
    eligible = [r for r in results if 0.0 < r.lam < 1.0] or results
    best = min(eligible, key=lambda r: (r.stress + r.silhouette_inverted, r.lam))
    return results, best.lam


DEFAULT_TREE_SCHEDULE = [2**i for i in range(1, 15)]


@dataclass
class TreeSweepResult:
    curve: list[tuple[int, float]]  # (tree count, coverage)
    chosen_k: int
    jep_set: JepSet
    counts: SelectionCounts
    raw_patterns: list[RawPattern]


def sweep_trees(
    dataset: Dataset, schedule: list[int] | None = None, seed: int = 0
) -> TreeSweepResult:
    """Grow the forest along an increasing schedule until selection covers
    every instance.

    Trees accumulate across schedule steps (streams depend only on the tree
    index), so stopping at k is identical to mining k trees in one shot. If
    the schedule is exhausted short of full coverage, the earliest k with
    maximum coverage is chosen.
    """
    schedule = list(DEFAULT_TREE_SCHEDULE if schedule is None else schedule)
    if not schedule or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise InputError("tree schedule must be strictly increasing and nonempty")
    patterns: list[RawPattern] = []
    trees_grown = 0
    curve: list[tuple[int, float]] = []
    best: tuple[int, JepSet, SelectionCounts, int] | None = None
    for k in schedule:
        for tree in induct_forest(dataset, k - trees_grown, seed, first_tree=trees_grown):
            patterns.extend(extract_patterns(tree, dataset, id_start=len(patterns)))
        trees_grown = k
        jep_set, counts = select_and_aggregate(patterns, dataset)
        curve.append((k, jep_set.coverage))
        if best is None or jep_set.coverage > best[1].coverage:
            best = (k, jep_set, counts, len(patterns))
        if jep_set.coverage >= 1.0:
            break
    chosen_k, jep_set, counts, n_raw = best
    return TreeSweepResult(curve, chosen_k, jep_set, counts, patterns[:n_raw])
