import {
    FET_INSIGNIFICANT_COLOR,
    FET_SIGNIFICANT_COLOR,
    ScaleKind,
    classColor,
    grayscale,
    scaleValue,
} from "./palette.js";
import type { MetaResponse, PatternRow, PatternsResponse } from "./types.js";

export interface ColumnVM {
    name: string;
    importance: number;
}

export interface CellVM {
    variable: string;
    counts: number[] | null; // null renders as an empty, toggleable cell
}

export interface MatrixRowVM {
    patternId: number;
    className: string;
    classColor: string;
    support: number;
    cumulativeCoverage: number;
    fetSignificant: boolean;
    fetColor: string;
    aggregatedFrom: number;
    supportedInstanceIds: number[];
    cells: CellVM[];
}

export interface MatrixViewModel {
    columns: ColumnVM[];
    classes: { name: string; color: string }[];
    rows: MatrixRowVM[];
    order: string;
    coverage: number;
}

/** Rows and columns exactly as served: columns in the importance order the
 * service provides, one cell per column per row (counts only where the
 * pattern carries a selector or the response included all cells). */
export function buildMatrixViewModel(
    meta: MetaResponse,
    patterns: PatternsResponse,
): MatrixViewModel {
    const classes = meta.dataset.classes.map((name) => ({
        name,
        color: classColor(meta.dataset.classes, name),
    }));
    const columns = meta.dataset.variables.map((v) => ({
        name: v.name,
        importance: v.importance,
    }));
    const rows = patterns.rows.map((row: PatternRow): MatrixRowVM => {
        const byVariable = new Map(row.cells.map((cell) => [cell.variable, cell.counts]));
        return {
            patternId: row.pattern_id,
            className: row.class,
            classColor: classColor(meta.dataset.classes, row.class),
            support: row.support,
            cumulativeCoverage: row.cumulative_coverage,
            fetSignificant: row.fet_significant,
            fetColor: row.fet_significant ? FET_SIGNIFICANT_COLOR : FET_INSIGNIFICANT_COLOR,
            aggregatedFrom: row.aggregated_from,
            supportedInstanceIds: row.supported_instance_ids,
            cells: columns.map((column) => ({
                variable: column.name,
                counts: byVariable.get(column.name) ?? null,
            })),
        };
    });
    return { columns, classes, rows, order: patterns.order, coverage: patterns.coverage };
}

const BAR_WIDTH = 60;
const BAR_HEIGHT = 14;
const CELL_WIDTH = 90;
const CELL_HEIGHT = 32;

function magnitudeBar(value: number, kind: ScaleKind, label: string): string {
    const scaled = scaleValue(value, kind);
    const width = (scaled * BAR_WIDTH).toFixed(2);
    return (
        `<svg class="bar bar-${label}" data-value="${value}" width="${BAR_WIDTH}" height="${BAR_HEIGHT}">` +
        `<rect x="0" y="0" width="${width}" height="${BAR_HEIGHT}" fill="${grayscale(value, kind)}" stroke="#666"></rect>` +
        `</svg>`
    );
}

export function histogramSvg(counts: number[], width = CELL_WIDTH, height = CELL_HEIGHT): string {
    const peak = Math.max(...counts, 1);
    const slot = width / counts.length;
    const bars = counts
        .map((count, i) => {
            const h = (count / peak) * height;
            const x = (i * slot).toFixed(2);
            const y = (height - h).toFixed(2);
            return (
                `<rect data-count="${count}" x="${x}" y="${y}" ` +
                `width="${(slot * 0.9).toFixed(2)}" height="${h.toFixed(2)}" fill="#5b7aa5"></rect>`
            );
        })
        .join("");
    return `<svg class="histogram" width="${width}" height="${height}">${bars}</svg>`;
}

/** Render the matrix as an HTML table string. All displayed magnitudes carry
 * their raw served value in data-value attributes. */
export function renderMatrix(vm: MatrixViewModel, scale: ScaleKind = "linear"): string {
    if (!vm.rows.length) {
        return `<div class="matrix-empty">No patterns match the current filters.</div>`;
    }
    const header =
        `<tr><th>pattern</th><th>support</th><th>coverage</th>` +
        vm.columns
            .map(
                (column) =>
                    `<th class="column" data-variable="${column.name}">` +
                    `<div class="column-name">${column.name}</div>` +
                    magnitudeBar(column.importance, scale, "importance") +
                    `</th>`,
            )
            .join("") +
        `<th>FET</th></tr>`;
    const body = vm.rows
        .map((row) => {
            const cells = row.cells
                .map((cell) => {
                    if (cell.counts === null) {
                        return (
                            `<td class="cell cell-empty" data-pattern="${row.patternId}" ` +
                            `data-variable="${cell.variable}" title="no selector; click to load"></td>`
                        );
                    }
                    return (
                        `<td class="cell" data-pattern="${row.patternId}" data-variable="${cell.variable}">` +
                        histogramSvg(cell.counts) +
                        `</td>`
                    );
                })
                .join("");
            return (
                `<tr class="pattern-row" data-pattern="${row.patternId}">` +
                `<td class="pattern-label" style="border-left: 6px solid ${row.classColor}">` +
                `p<sub>${row.patternId}</sub> ${row.className}</td>` +
                `<td>${magnitudeBar(row.support, scale, "support")}</td>` +
                `<td>${magnitudeBar(row.cumulativeCoverage, scale, "coverage")}</td>` +
                cells +
                `<td><span class="fet-flag ${row.fetSignificant ? "fet-significant" : "fet-insignificant"}" ` +
                `data-significant="${row.fetSignificant}" style="background:${row.fetColor}"></span></td>` +
                `</tr>`
            );
        })
        .join("");
    return `<table class="jep-matrix"><thead>${header}</thead><tbody>${body}</tbody></table>`;
}
