"""Random decision tree induction and per-path pattern extraction.

Trees are grown CART-style on the full dataset (no bagging) with a random
variable subset of size ceil(log2 M) at every node, and are never pruned:
growth continues until every leaf is class-pure, which the ambiguity-free
ingestion guarantees is reachable. Each root-to-leaf path then yields one
candidate pattern whose selectors are closed intervals in variable units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset
from .errors import ConsistencyError, InputError


@dataclass
class LeafNode:
    class_id: int
    rows: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"class": self.class_id, "rows": list(self.rows)}


@dataclass
class SplitNode:
    variable: int
    threshold: float
    left: "SplitNode | LeafNode"
    right: "SplitNode | LeafNode"

    def to_dict(self) -> dict:
        return {
            "variable": self.variable,
            "threshold": self.threshold,
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
        }


@dataclass
class TreeModel:
    root: SplitNode | LeafNode
    tree_index: int

    def leaves(self) -> list[LeafNode]:
        out: list[LeafNode] = []
        stack: list[SplitNode | LeafNode] = [self.root]
        while stack:
            node = stack.pop()
            if isinstance(node, LeafNode):
                out.append(node)
            else:
                stack.append(node.right)
                stack.append(node.left)
        out.reverse()
        return out

    def to_dict(self) -> dict:
        return {"tree_index": self.tree_index, "root": self.root.to_dict()}


@dataclass
class RawPattern:
    """One decision path materialized as interval selectors.

    ``selectors`` maps variable index to a closed [low, high] interval; every
    supported row satisfies every selector and all supported rows share
    ``class_id`` (leaves are pure).
    """

    id: int
    selectors: dict[int, tuple[float, float]]
    class_id: int
    supported_rows: tuple[int, ...]


def subset_size(n_variables: int) -> int:
    if n_variables <= 2:
        return 1
    return math.ceil(math.log2(n_variables))


def _best_split_for_variable(
    values: np.ndarray, onehot: np.ndarray
) -> tuple[float, float] | None:
    """Lowest weighted-Gini (score, threshold) over midpoints, or None.

    Thresholds are midpoints between consecutive distinct sorted values, so
    both children are always nonempty. Ties resolve to the lowest threshold.
    """
    order = np.argsort(values, kind="stable")
    sv = values[order]
    if sv[0] == sv[-1]:
        return None
    n = len(sv)
    cum = onehot[order].cumsum(axis=0)
    total = cum[-1]
    cuts = np.flatnonzero(sv[:-1] != sv[1:])
    n_left = (cuts + 1).astype(float)
    n_right = n - n_left
    c_left = cum[cuts]
    c_right = total - c_left
    gini_left = 1.0 - ((c_left / n_left[:, None]) ** 2).sum(axis=1)
    gini_right = 1.0 - ((c_right / n_right[:, None]) ** 2).sum(axis=1)
    weighted = (n_left * gini_left + n_right * gini_right) / n
    j = int(np.argmin(weighted))
    threshold = (sv[cuts[j]] + sv[cuts[j] + 1]) / 2.0
    return float(weighted[j]), float(threshold)


def induct_tree(
    dataset: Dataset, rng: np.random.Generator, tree_index: int = 0
) -> TreeModel:
    """Grow one unpruned random tree over all rows of the dataset.

    At each impure node, ceil(log2 M) variables are drawn without
    replacement; if none of them can split (all constant within the node),
    further variables are added one at a time until a split exists, which
    ambiguity-freeness guarantees. The (variable, threshold) pair minimizing
    weighted Gini impurity wins; ties break on lowest variable index, then
    lowest threshold.
    """
    X = dataset.instances
    y = dataset.labels
    n_classes = len(dataset.classes)
    n_take = subset_size(dataset.n_variables)
    class_ids = np.arange(n_classes)

    def grow(rows: np.ndarray) -> SplitNode | LeafNode:
        ys = y[rows]
        if (ys == ys[0]).all():
            return LeafNode(int(ys[0]), tuple(int(r) for r in rows))
        onehot = ys[:, None] == class_ids[None, :]
        draw_order = rng.permutation(dataset.n_variables)
        best_key: tuple[float, int, float] | None = None
        for position, variable in enumerate(draw_order):
            if position >= n_take and best_key is not None:
                break
            found = _best_split_for_variable(X[rows, variable], onehot)
            if found is None:
                continue
            score, threshold = found
            key = (score, int(variable), threshold)
            if best_key is None or key < best_key:
                best_key = key
        if best_key is None:
            raise ConsistencyError(
                "impure node admits no split; dataset is not ambiguity-free"
            )
        _, variable, threshold = best_key
        mask = X[rows, variable] <= threshold
        return SplitNode(variable, threshold, grow(rows[mask]), grow(rows[~mask]))

    return TreeModel(grow(np.arange(dataset.n_rows)), tree_index)


def extract_patterns(
    tree: TreeModel, dataset: Dataset, id_start: int = 0
) -> list[RawPattern]:
    """One pattern per leaf, intersecting all path constraints per variable.

    A "v <= t" edge contributes an upper bound of t (lower side clamped to
    the variable minimum); a "v > t" edge is closed by snapping the lower
    bound up to the smallest observed column value above t, which preserves
    the supported set exactly. Variables absent from the path contribute no
    selector.
    """
    sorted_columns = [np.unique(dataset.instances[:, j]) for j in range(dataset.n_variables)]
    ranges = dataset.variable_ranges
    out: list[RawPattern] = []

    def snap_above(variable: int, t: float) -> float:
        column = sorted_columns[variable]
        idx = int(np.searchsorted(column, t, side="right"))
        if idx >= len(column):
            raise ConsistencyError("split threshold above the column maximum")
        return float(column[idx])

    def walk(node, lower: dict[int, float], upper: dict[int, float]) -> None:
        if isinstance(node, LeafNode):
            selectors: dict[int, tuple[float, float]] = {}
            for variable in sorted(set(lower) | set(upper)):
                low = lower.get(variable, ranges[variable][0])
                high = upper.get(variable, ranges[variable][1])
                if low > high:
                    raise ConsistencyError("contradictory path constraints")
                selectors[variable] = (low, high)
            out.append(
                RawPattern(
                    id=id_start + len(out),
                    selectors=selectors,
                    class_id=node.class_id,
                    supported_rows=node.rows,
                )
            )
            return
        v, t = node.variable, node.threshold
        left_upper = dict(upper)
        left_upper[v] = min(left_upper.get(v, math.inf), t)
        walk(node.left, lower, left_upper)
        right_lower = dict(lower)
        right_lower[v] = max(right_lower.get(v, -math.inf), snap_above(v, t))
        walk(node.right, right_lower, upper)

    walk(tree.root, {}, {})
    return out


def tree_rng(seed: int, tree_index: int) -> np.random.Generator:
    """Independent, reproducible stream for one tree of a forest."""
    return np.random.default_rng(np.random.SeedSequence([seed, tree_index]))


def induct_forest(
    dataset: Dataset, k: int, seed: int, first_tree: int = 0
) -> list[TreeModel]:
    """Trees ``first_tree .. first_tree + k - 1`` of the seeded forest.

    Tree streams depend only on (seed, tree index), so growing a forest
    incrementally yields bit-identical trees to growing it in one call.
    """
    if k < 1:
        raise InputError("tree count must be at least 1")
    return [
        induct_tree(dataset, tree_rng(seed, i), tree_index=i)
        for i in range(first_tree, first_tree + k)
    ]


def mine(dataset: Dataset, k: int, seed: int) -> list[RawPattern]:
    """All decision-path patterns of a k-tree seeded forest, in tree order."""
    patterns: list[RawPattern] = []
    for tree in induct_forest(dataset, k, seed):
        patterns.extend(extract_patterns(tree, dataset, id_start=len(patterns)))
    return patterns
