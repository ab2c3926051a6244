import math

import numpy as np
import pytest

from vax.dataset import Dataset
from vax.errors import InputError
from vax.explain import (
    FilterCriteria,
    MatrixOptions,
    build_matrix_model,
    cumulative_coverage,
    filter_patterns,
    freedman_diaconis_bins,
    histogram_edges,
    order_rows,
    variable_importance,
)
from vax.jep import JepSet, Pattern

from reference import fd_bin_count, scan_supported


def dummy_pattern(pattern_id, class_id, rows, support, selectors=None, fet_p=0.001):
    return Pattern(
        id=pattern_id,
        selectors=selectors or {},
        class_id=class_id,
        supported_rows=tuple(rows),
        support=support,
        growth_rate=math.inf,
        confidence=1.0,
        fet_p=fet_p,
    )


class TestFreedmanDiaconis:
    def test_closed_form_example(self):
        assert freedman_diaconis_bins(np.arange(1, 9)) == 2

    def test_constant_vector(self):
        assert freedman_diaconis_bins(np.full(10, 3.3)) == 1

    def test_matches_reimplementation_on_normals(self):
        values = np.random.default_rng(4).normal(size=500)
        assert freedman_diaconis_bins(values) == fd_bin_count(values.tolist())

    def test_too_few_values(self):
        with pytest.raises(InputError):
            freedman_diaconis_bins(np.array([1.0]))


class TestImportance:
    def test_single_selector_pattern(self, six_rows):
        jep_set = JepSet(
            [dummy_pattern(0, 0, [0, 1, 2], 0.8, selectors={0: (0.5, 3.0)})], 6
        )
        scores = variable_importance(jep_set, six_rows)
        assert scores.tolist() == [1.0, 0.0]

    def test_all_patterns_select_all_variables(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        both = [p for p in jep_set.patterns if set(p.selectors) == {0, 1}]
        subset = JepSet(both, blob_dataset.n_rows)
        scores = variable_importance(subset, blob_dataset)
        assert scores.tolist() == [1.0, 1.0]

    def test_raw_sum_matches_oracle(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        raw = [0.0, 0.0]
        for p in jep_set.patterns:
            for v in p.selectors:
                raw[v] += p.support
        scores = variable_importance(jep_set, blob_dataset)
        lo, hi = min(raw), max(raw)
        want = [1.0, 1.0] if hi == lo else [(r - lo) / (hi - lo) for r in raw]
        assert scores.tolist() == pytest.approx(want)

    def test_empty_set_rejected(self, six_rows):
        with pytest.raises(InputError):
            variable_importance(JepSet([], 6), six_rows)


class TestCoverage:
    def test_reported_fractions(self):
        first = dummy_pattern(0, 0, range(100), 1.0)
        second = dummy_pattern(1, 1, range(100, 187), 0.87)
        jep_set = JepSet([first, second], 500)
        running = cumulative_coverage(jep_set, [0, 1])
        assert running[0] == pytest.approx(0.20)
        assert running[1] == pytest.approx(0.374, abs=0.001)

    def test_total_is_permutation_invariant(self, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        n = len(jep_set.patterns)
        rng = np.random.default_rng(0)
        total = cumulative_coverage(jep_set, list(range(n)))[-1]
        shuffled = rng.permutation(n).tolist()
        assert cumulative_coverage(jep_set, shuffled)[-1] == pytest.approx(total)

    def test_invalid_permutation_rejected(self, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        with pytest.raises(InputError):
            cumulative_coverage(jep_set, [0, 0, 1])


class TestOrdering:
    def test_support_descending(self, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        perm = order_rows(jep_set, "support")
        supports = [jep_set.patterns[i].support for i in perm]
        assert supports == sorted(supports, reverse=True)
        assert supports[0] == 1.0

    def test_equal_supports_keep_stable_order(self):
        patterns = [dummy_pattern(i, 0, [i], 0.5) for i in range(4)]
        jep_set = JepSet(patterns, 4)
        assert order_rows(jep_set, "support") == [0, 1, 2, 3]

    def test_matches_independent_sort(self, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        perm = order_rows(jep_set, "class_and_support")
        decorated = sorted(
            range(len(jep_set.patterns)),
            key=lambda i: (
                jep_set.patterns[i].class_id,
                -jep_set.patterns[i].support,
                i,
            ),
        )
        assert perm == decorated

    def test_unknown_key_rejected(self, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        with pytest.raises(InputError):
            order_rows(jep_set, "alphabetical")


class TestFiltering:
    def test_coverage_prefix_plus_instance_outlier(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        in_support_order = order_rows(jep_set, "support")
        running = cumulative_coverage(jep_set, in_support_order)
        target = running[10]  # coverage of the first 11 patterns
        outlier_pattern = jep_set.patterns[in_support_order[-1]]
        outlier_instance = blob_dataset.instance_ids[outlier_pattern.supported_rows[0]]
        subset = filter_patterns(
            jep_set,
            FilterCriteria(coverage_target=target, instance_ids=[outlier_instance]),
            blob_dataset,
        )
        kept_ids = {p.id for p in subset.patterns}
        prefix_ids = {jep_set.patterns[i].id for i in in_support_order[:11]}
        assert kept_ids == prefix_ids | {outlier_pattern.id}
        assert len(subset.patterns) == 12

    def test_single_instance_yields_single_pattern(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        instance = blob_dataset.instance_ids[0]
        subset = filter_patterns(
            jep_set, FilterCriteria(instance_ids=[instance]), blob_dataset
        )
        assert len(subset.patterns) == 1

    def test_random_criteria_match_linear_scan(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        rng = np.random.default_rng(17)
        for _ in range(10):
            min_support = float(rng.uniform(0, 0.5))
            classes = sorted(
                rng.choice(len(blob_dataset.classes), size=2, replace=False).tolist()
            )
            subset = filter_patterns(
                jep_set,
                FilterCriteria(min_support=min_support, classes=classes),
                blob_dataset,
            )
            want = [
                p.id
                for p in jep_set.patterns
                if p.support >= min_support and p.class_id in classes
            ]
            assert [p.id for p in subset.patterns] == want

    def test_unknown_instance_rejected(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        with pytest.raises(InputError, match="unknown instance"):
            filter_patterns(
                jep_set, FilterCriteria(instance_ids=[987654]), blob_dataset
            )


class TestMatrixModel:
    def test_full_class_pattern_local_equals_global(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        model = build_matrix_model(jep_set, blob_dataset)
        class_e = blob_dataset.classes.index("E")
        idx = next(
            i
            for i, p in enumerate(jep_set.patterns)
            if p.class_id == class_e and p.support == 1.0
        )
        for v in jep_set.patterns[idx].selectors:
            local = model.local_histograms[(idx, v)]
            assert local.tolist() == model.global_histograms[class_e][v].tolist()

    def test_cells_absent_for_non_selector_variables(self, six_rows):
        jep_set = JepSet(
            [dummy_pattern(0, 0, [0, 1, 2], 1.0, selectors={0: (0.5, 3.0)})], 6
        )
        model = build_matrix_model(jep_set, six_rows)
        assert (0, 0) in model.local_histograms
        assert (0, 1) not in model.local_histograms
        all_cells = build_matrix_model(
            jep_set, six_rows, MatrixOptions(include_all_cells=True)
        )
        assert (0, 1) in all_cells.local_histograms

    def test_histogram_conservation(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        model = build_matrix_model(jep_set, blob_dataset)
        for c in range(len(blob_dataset.classes)):
            for v in range(blob_dataset.n_variables):
                assert model.global_histograms[c][v].sum() == blob_dataset.class_size(c)
        for (idx, v), counts in model.local_histograms.items():
            assert counts.sum() == len(jep_set.patterns[idx].supported_rows)

    def test_shared_edges_across_classes_and_patterns(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        model = build_matrix_model(jep_set, blob_dataset)
        for v in range(blob_dataset.n_variables):
            expected = histogram_edges(blob_dataset, v)
            assert np.array_equal(model.edges[v], expected)

    def test_fet_flag_strictly_below_threshold(self, blob_dataset):
        patterns = [
            dummy_pattern(0, 0, [0], 0.5, selectors={0: (0.0, 1.0)}, fet_p=0.049999),
            dummy_pattern(1, 1, [1], 0.5, selectors={0: (0.0, 1.0)}, fet_p=0.05),
        ]
        jep_set = JepSet(patterns, blob_dataset.n_rows)
        model = build_matrix_model(jep_set, blob_dataset)
        assert model.fet_significant == [True, False]

    def test_json_shape(self, blob_dataset, blob_jep_set):
        jep_set, _, _ = blob_jep_set
        payload = build_matrix_model(jep_set, blob_dataset).to_json_dict()
        assert payload["classes"] == blob_dataset.classes
        assert {v["name"] for v in payload["variables"]} == set(
            blob_dataset.variable_names
        )
        assert len(payload["rows"]) == len(jep_set.patterns)
        first = payload["rows"][0]
        assert first["support"] == 1.0
        assert first["cumulative_coverage"] == pytest.approx(0.2)
        coverages = [row["cumulative_coverage"] for row in payload["rows"]]
        assert coverages == sorted(coverages)
