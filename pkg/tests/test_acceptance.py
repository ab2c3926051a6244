"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with -s to see them live).

Shared heavy computations (the twenty randomized datasets, the five seeded
benchmark runs) are module-scoped fixtures so the whole suite stays inside
the stated runtime budgets.
"""

import math
import time
from pathlib import Path

import numpy as np
import pytest
import scipy.stats

from vax import artifacts
from vax.embed import (
    extend,
    kruskal_stress,
    mds,
    pairwise_distances,
    silhouette_inverted,
    sweep_lambda,
    sweep_trees,
    weight,
    weight_raw,
)
from vax.forest import mine
from vax.jep import JepSet, fisher_exact_pvalue, select_and_aggregate
from vax.pipeline import RunConfig, run
from vax.synthetic import five_class_blobs, random_blob_dataset

from conftest import write_csv
from reference import reference_select_and_aggregate, scan_supported


def report(name: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] {name}" + (f" ({detail})" if detail else ""))
    assert passed, f"{name}: {detail}"


@pytest.fixture(scope="module")
def twenty_randomized():
    """Twenty seeded datasets (N <= 500, M <= 10, J <= 5) mined with the
    automatic tree schedule."""
    rng = np.random.default_rng(2024)
    out = []
    start = time.perf_counter()
    for i in range(20):
        dataset = random_blob_dataset(
            seed=1000 + i,
            n_rows=int(rng.integers(60, 501)),
            n_variables=int(rng.integers(2, 11)),
            n_classes=int(rng.integers(2, 6)),
            overlap=float(rng.uniform(0.6, 2.0)),
        )
        sweep = sweep_trees(dataset, schedule=[2, 4, 8, 16, 32, 64, 128, 256], seed=i)
        out.append((dataset, sweep))
    return out, time.perf_counter() - start


@pytest.fixture(scope="module")
def five_benchmark_runs():
    """The 5-class / 2-variable benchmark mined at k=128 over five seeds."""
    out = []
    start = time.perf_counter()
    for seed in range(1, 6):
        dataset = five_class_blobs(seed=seed)
        raw = mine(dataset, 128, seed=seed)
        jep_set, counts = select_and_aggregate(raw, dataset)
        out.append((dataset, raw, jep_set, counts))
    return out, time.perf_counter() - start


def test_a01_jep_purity(twenty_randomized):
    datasets, elapsed = twenty_randomized
    checked = 0
    for dataset, sweep in datasets:
        instances = dataset.instances.tolist()
        labels = dataset.labels.tolist()
        class_rows = {
            c: [i for i, l in enumerate(labels) if l == c]
            for c in range(len(dataset.classes))
        }
        for pattern in sweep.jep_set.patterns:
            oracle_rows = scan_supported(instances, pattern.selectors)
            assert oracle_rows == list(pattern.supported_rows)
            oracle_classes = {labels[r] for r in oracle_rows}
            # confidence exactly 1.0: every supported row is the pattern class
            assert oracle_classes == {pattern.class_id}
            # growth rate infinity: zero support on the complement, nonzero
            # support on the class partition
            target = class_rows[pattern.class_id]
            hits_target = sum(1 for r in oracle_rows if r in set(target))
            assert hits_target == len(oracle_rows) > 0
            assert pattern.confidence == 1.0
            assert pattern.growth_rate == math.inf
            checked += 1
    report(
        "A01 jep-purity",
        True,
        f"{checked} patterns over 20 datasets, mining {elapsed:.1f}s",
    )


def test_a02_disjoint_full_cover(twenty_randomized):
    datasets, _ = twenty_randomized
    for dataset, sweep in datasets:
        assert sweep.jep_set.coverage == 1.0, "auto-k did not reach full coverage"
        owners = np.full(dataset.n_rows, -1)
        for p in sweep.jep_set.patterns:
            rows = np.asarray(p.supported_rows)
            assert (owners[rows] == -1).all(), "instance claimed twice"
            owners[rows] = p.id
        assert (owners >= 0).all(), "instance left unsupported"
    report("A02 disjoint-full-cover", True, "20/20 datasets at coverage 1.0")


def test_a03_benchmark_replication(five_benchmark_runs):
    runs, elapsed = five_benchmark_runs
    hits = 0
    for dataset, _, jep_set, _ in runs:
        class_e = dataset.classes.index("E")
        e_full = [
            p
            for p in jep_set.patterns
            if p.class_id == class_e and p.support == 1.0
        ]
        e_patterns = [p for p in jep_set.patterns if p.class_id == class_e]
        overlapping = [
            p
            for p in jep_set.patterns
            if dataset.classes[p.class_id] in ("A", "B")
        ]
        adjacent = [
            p
            for p in jep_set.patterns
            if dataset.classes[p.class_id] in ("C", "D")
        ]
        isolated_ok = len(e_full) == 1 and len(e_patterns) == 1
        mean_overlap = sum(p.support for p in overlapping) / len(overlapping)
        mean_adjacent = sum(p.support for p in adjacent) / len(adjacent)
        if isolated_ok and mean_overlap < mean_adjacent:
            hits += 1
    report(
        "A03 benchmark-replication",
        hits >= 4,
        f"{hits}/5 seeds hold, {elapsed:.1f}s",
    )
    assert elapsed < 120


def test_a04_aggregation_compression(five_benchmark_runs):
    runs, elapsed = five_benchmark_runs
    for _, raw, jep_set, _ in runs:
        assert 5_000 <= len(raw) <= 40_000, f"raw pattern count {len(raw)}"
        assert 30 <= len(jep_set.patterns) <= 150, f"jep count {len(jep_set.patterns)}"
    report(
        "A04 aggregation-compression",
        True,
        f"raw {[len(r) for _, r, _, _ in runs]}, "
        f"jeps {[len(j.patterns) for _, _, j, _ in runs]}",
    )
    assert elapsed < 120


def test_a05_selection_matches_reference():
    start = time.perf_counter()
    rng = np.random.default_rng(7)
    for case in range(50):
        dataset = random_blob_dataset(
            seed=3000 + case,
            n_rows=int(rng.integers(6, 21)),
            n_variables=int(rng.integers(1, 3)),
            n_classes=int(rng.integers(2, 4)),
            overlap=float(rng.uniform(0.8, 2.5)),
        )
        raw = mine(dataset, int(rng.integers(1, 6)), seed=case)
        jep_set, counts = select_and_aggregate(raw, dataset)
        class_sizes = [dataset.class_size(c) for c in range(len(dataset.classes))]
        want, want_counts = reference_select_and_aggregate(
            raw,
            dataset.labels,
            class_sizes,
            dataset.instances.tolist(),
            dataset.n_variables,
        )
        got = [
            {
                "id": p.id,
                "class_id": p.class_id,
                "rows": p.supported_rows,
                "selectors": p.selectors,
                "aggregated_from": p.aggregated_from,
            }
            for p in jep_set.patterns
        ]
        assert got == want, f"case {case} diverged from the reference"
        assert counts.selected == want_counts["selected"]
        assert counts.aggregated == want_counts["aggregated"]
        assert counts.discarded == want_counts["discarded"]
    elapsed = time.perf_counter() - start
    report("A05 selection-reference-equivalence", True, f"50 cases in {elapsed:.1f}s")
    assert elapsed < 30


def test_a06_fet_exactness():
    start = time.perf_counter()
    rng = np.random.default_rng(11)
    for _ in range(200):
        target_total = int(rng.integers(1, 51))
        other_total = int(rng.integers(1, 51))
        k = int(rng.integers(0, target_total + 1))
        m = int(rng.integers(0, other_total + 1))
        mine_p = fisher_exact_pvalue(k, m, target_total, other_total)
        table = [[k, m], [target_total - k, other_total - m]]
        _, oracle_p = scipy.stats.fisher_exact(table, alternative="greater")
        assert abs(mine_p - oracle_p) < 1e-9, f"table {table}"
    elapsed = time.perf_counter() - start
    report("A06 fet-exactness", True, f"200 tables in {elapsed:.2f}s")
    assert elapsed < 5


def test_a07_coverage_arithmetic():
    from vax.explain import cumulative_coverage
    from vax.jep import Pattern

    def pat(pid, rows, support):
        return Pattern(
            id=pid,
            selectors={},
            class_id=0,
            supported_rows=tuple(rows),
            support=support,
            growth_rate=math.inf,
            confidence=1.0,
        )

    jep_set = JepSet([pat(0, range(100), 1.0), pat(1, range(100, 187), 0.87)], 500)
    running = cumulative_coverage(jep_set, [0, 1])
    assert running[0] == pytest.approx(0.20, abs=1e-12)
    assert running[1] == pytest.approx(0.374, abs=0.001)
    report("A07 coverage-arithmetic", True, f"0.20 then {running[1]:.4f}")


def test_a08_mds_fidelity():
    start = time.perf_counter()
    rng = np.random.default_rng(5)
    planar = rng.normal(size=(40, 2))
    lifted = np.hstack([planar @ rng.normal(size=(2, 6)), np.zeros((40, 2))])
    coords = mds(lifted)
    high = pairwise_distances(lifted)
    low = pairwise_distances(coords)
    assert np.abs(high - low).max() < 1e-6
    assert kruskal_stress(high, low) < 1e-6
    d = pairwise_distances(rng.normal(size=(12, 4)))
    assert kruskal_stress(d, d) == 0.0
    blob_a = rng.normal((0, 0), 0.2, size=(25, 2))
    blob_b = rng.normal((30, 0), 0.2, size=(25, 2))
    sc_inv = silhouette_inverted(
        np.vstack([blob_a, blob_b]), np.array([0] * 25 + [1] * 25)
    )
    assert sc_inv < 0.1
    elapsed = time.perf_counter() - start
    report("A08 mds-fidelity", True, f"{elapsed:.2f}s, blob sc'={sc_inv:.4f}")
    assert elapsed < 5


def test_a09_blend_endpoints(five_benchmark_runs):
    runs, _ = five_benchmark_runs
    dataset, _, jep_set, _ = runs[0]
    extended = extend(dataset, jep_set)
    z = np.zeros_like(dataset.instances)
    for j in range(dataset.n_variables):
        column = dataset.instances[:, j]
        std = column.std()
        if std > 0:
            z[:, j] = (column - column.mean()) / std
    want = pairwise_distances(z)
    got = pairwise_distances(weight(extended, 0.0))
    assert np.abs(want - got).max() < 1e-9
    raw_one = weight_raw(extended, 1.0)
    for p in jep_set.patterns:
        rows = np.asarray(p.supported_rows)
        block = raw_one[rows]
        assert np.all(block == block[0]), "same-group rows differ at blend 1"
    report("A09 blend-endpoints", True)


def test_a10_blend_sweep_shape(five_benchmark_runs):
    runs, _ = five_benchmark_runs
    dataset, _, jep_set, _ = runs[0]
    grid = [round(0.05 * i, 2) for i in range(21)]
    results, recommended = sweep_lambda(dataset, jep_set, grid)
    stresses = [r.stress for r in results]
    silhouettes = [r.silhouette_inverted for r in results]
    for left, right in zip(stresses, stresses[1:]):
        assert right >= left - 0.02, f"stress dropped {left:.4f} -> {right:.4f}"
    for left, right in zip(silhouettes, silhouettes[1:]):
        assert right <= left + 0.02, f"sc' rose {left:.4f} -> {right:.4f}"
    assert 0.0 < recommended < 1.0
    report(
        "A10 blend-sweep-shape",
        True,
        f"stress 0->{stresses[-1]:.3f}, sc' {silhouettes[0]:.3f}->{silhouettes[-1]:.3f}, "
        f"recommended {recommended}",
    )


def test_a11_pipeline_determinism(tmp_path):
    dataset = five_class_blobs(seed=2)
    rows = [
        [dataset.instances[i, 0], dataset.instances[i, 1], dataset.classes[dataset.labels[i]]]
        for i in range(dataset.n_rows)
    ]
    csv_path = write_csv(tmp_path / "blobs.csv", ["var_1", "var_2", "class"], rows)

    def run_once(out):
        run(
            RunConfig(
                input_path=str(csv_path),
                label_column="class",
                out_dir=str(out),
                seed=9,
                trees=8,
                blend="auto",
                blend_grid=[0.0, 0.35, 0.65, 1.0],
            )
        )
        return {
            str(p.relative_to(out)): p.read_bytes()
            for p in sorted(Path(out).rglob("*"))
            if p.is_file() and p.name != artifacts.TIMINGS_FILE
        }

    first = run_once(tmp_path / "one")
    second = run_once(tmp_path / "two")
    assert first.keys() == second.keys()
    mismatched = [name for name in first if first[name] != second[name]]
    assert not mismatched, f"artifacts differ: {mismatched}"
    report("A11 pipeline-determinism", True, f"{len(first)} artifacts byte-identical")
