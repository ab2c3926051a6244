import assert from "node:assert/strict";
import { test } from "node:test";
import { buildMatrixViewModel, histogramSvg, renderMatrix } from "../src/matrix.js";
import { FET_INSIGNIFICANT_COLOR, FET_SIGNIFICANT_COLOR } from "../src/palette.js";
import { loadFixtures } from "./helpers.js";
const fixtures = loadFixtures();
test("first row of the support-ordered matrix is the full-support pattern", () => {
    const vm = buildMatrixViewModel(fixtures.meta, fixtures.patternsSupport);
    assert.equal(vm.rows[0].support, 1);
    const html = renderMatrix(vm);
    // support 1.0 renders as a completely filled rectangle
    const match = html.match(/class="bar bar-support" data-value="1"[^>]*><rect[^>]*width="60\.00"/);
    assert.ok(match, "full-support bar should span the whole bar width");
});
test("every rendered magnitude carries the exact served value", () => {
    const vm = buildMatrixViewModel(fixtures.meta, fixtures.patternsSupport);
    const html = renderMatrix(vm);
    for (const row of fixtures.patternsSupport.rows) {
        assert.ok(html.includes(`class="bar bar-support" data-value="${row.support}"`), `support ${row.support} of pattern ${row.pattern_id} not rendered verbatim`);
        assert.ok(html.includes(`class="bar bar-coverage" data-value="${row.cumulative_coverage}"`), `coverage of pattern ${row.pattern_id} not rendered verbatim`);
    }
    for (const variable of fixtures.meta.dataset.variables) {
        assert.ok(html.includes(`class="bar bar-importance" data-value="${variable.importance}"`), `importance of ${variable.name} not rendered verbatim`);
    }
});
test("FET flag color matches fet_significant on every fixture row", () => {
    const vm = buildMatrixViewModel(fixtures.meta, fixtures.patternsSupport);
    for (const [i, row] of vm.rows.entries()) {
        const served = fixtures.patternsSupport.rows[i];
        assert.equal(row.fetSignificant, served.fet_significant);
        assert.equal(row.fetColor, served.fet_significant ? FET_SIGNIFICANT_COLOR : FET_INSIGNIFICANT_COLOR);
    }
    const html = renderMatrix(vm);
    const flags = [...html.matchAll(/fet-(significant|insignificant)" data-significant="(\w+)"/g)];
    assert.equal(flags.length, vm.rows.length);
    for (const flag of flags) {
        assert.equal(flag[1] === "significant", flag[2] === "true");
    }
});
test("histogram bars are proportional to served counts", () => {
    const counts = [4, 8, 2, 0];
    const svg = histogramSvg(counts, 90, 32);
    const heights = [...svg.matchAll(/data-count="(\d+)"[^>]*height="([\d.]+)"/g)].map((m) => ({ count: Number(m[1]), height: Number(m[2]) }));
    assert.equal(heights.length, 4);
    const peak = Math.max(...counts);
    for (const bar of heights) {
        assert.ok(Math.abs(bar.height - (bar.count / peak) * 32) < 0.01);
    }
});
test("cells without a selector render empty with an on-demand hook", () => {
    const meta = fixtures.meta;
    const sparse = {
        ...fixtures.patternsSupport,
        rows: [
            {
                ...fixtures.patternsSupport.rows[0],
                cells: fixtures.patternsSupport.rows[0].cells.slice(0, 1),
            },
        ],
    };
    const vm = buildMatrixViewModel(meta, sparse);
    assert.equal(vm.rows[0].cells.filter((c) => c.counts === null).length, 1);
    const html = renderMatrix(vm);
    assert.ok(html.includes("cell-empty"));
    assert.ok(html.includes(`data-variable="${vm.rows[0].cells[1].variable}"`));
});
test("zero rows renders the empty state", () => {
    const vm = buildMatrixViewModel(fixtures.meta, {
        ...fixtures.patternsSupport,
        rows: [],
    });
    assert.match(renderMatrix(vm), /matrix-empty/);
});
test("columns appear in the served importance order", () => {
    const vm = buildMatrixViewModel(fixtures.meta, fixtures.patternsSupport);
    assert.deepEqual(vm.columns.map((c) => c.name), fixtures.meta.dataset.variables.map((v) => v.name));
    const importances = vm.columns.map((c) => c.importance);
    const sorted = [...importances].sort((a, b) => b - a);
    assert.deepEqual(importances, sorted);
});
