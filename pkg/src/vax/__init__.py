"""Explain class-labeled multivariate data through jumping patterns mined
from random decision trees, a matrix view-model, and pattern-aware
similarity maps."""

from .dataset import (
    ClassPartition,
    Dataset,
    IngestConfig,
    IngestReport,
    discretize_target,
    ingest_csv,
    partition,
)
from .embed import (
    EmbeddingResult,
    ExtendedDataset,
    extend,
    kruskal_stress,
    mds,
    silhouette_inverted,
    sweep_lambda,
    sweep_trees,
    weight,
)
from .errors import ConsistencyError, InputError, VaxError
from .explain import (
    ExplanationModel,
    FilterCriteria,
    build_matrix_model,
    cumulative_coverage,
    filter_patterns,
    freedman_diaconis_bins,
    order_rows,
    variable_importance,
)
from .forest import RawPattern, TreeModel, extract_patterns, induct_tree, mine
from .jep import (
    JepSet,
    Pattern,
    aggregate_selectors,
    confidence,
    fisher_exact,
    fisher_exact_pvalue,
    growth_rate,
    select_and_aggregate,
    support,
    supported_row_indices,
)
from .pipeline import RunConfig, RunResult, explain_instances, run

__version__ = "0.1.0"
