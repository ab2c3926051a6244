import { HttpApiClient } from "./api.js";
import { buildMapViewModel, MapViewModel, pointsInRect, renderMap } from "./map.js";
import { buildMatrixViewModel, renderMatrix } from "./matrix.js";
import {
    applyMapSelection,
    fetchMatrixRows,
    hoverHighlight,
    Store,
} from "./state.js";
import type { MetaResponse, PatternRow } from "./types.js";

const api = new HttpApiClient();
const store = window.location.hash.length > 1
    ? Store.deserialize(window.location.hash.slice(1))
    : new Store();

let meta: MetaResponse;
let currentRows: PatternRow[] = [];
let mapViewModel: MapViewModel | null = null;
let highlighted = new Set<number>();

function element<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

async function refreshMatrix(): Promise<void> {
    const result = await fetchMatrixRows(api, store);
    currentRows = result.rows;
    const vm = buildMatrixViewModel(meta, {
        order: result.order,
        total_patterns: result.totalPatterns,
        coverage: result.coverage,
        rows: result.rows,
    });
    element("matrix").innerHTML = renderMatrix(vm);
    for (const rowNode of document.querySelectorAll<HTMLElement>(".pattern-row")) {
        const patternId = Number(rowNode.dataset.pattern);
        rowNode.addEventListener("mouseenter", () => {
            store.update({ hoverPatternId: patternId });
            highlighted = new Set(hoverHighlight(currentRows, patternId));
            refreshMapSvg();
        });
        rowNode.addEventListener("mouseleave", () => {
            store.update({ hoverPatternId: null });
            highlighted = new Set();
            refreshMapSvg();
        });
    }
}

function refreshMapSvg(): void {
    if (!mapViewModel) return;
    element("map").innerHTML = renderMap(mapViewModel, highlighted);
    attachBrush();
}

async function refreshMap(): Promise<void> {
    const state = store.get();
    const payload = await api.map(state.lambda);
    const interest = currentRows.map((row) => row.pattern_id);
    mapViewModel = buildMapViewModel(payload, meta, {
        colorMode: state.colorMode,
        patternsOfInterest: interest,
    });
    element("status").textContent =
        `blend ${payload.lambda_used.toFixed(2)}  stress ${payload.stress.toFixed(3)}  ` +
        `sc' ${payload.silhouette_inverted.toFixed(3)}`;
    refreshMapSvg();
}

function attachBrush(): void {
    const svg = document.querySelector<SVGSVGElement>("#map svg");
    if (!svg || !mapViewModel) return;
    let start: { x: number; y: number } | null = null;
    svg.addEventListener("pointerdown", (event) => {
        const box = svg.getBoundingClientRect();
        start = { x: event.clientX - box.left, y: event.clientY - box.top };
    });
    svg.addEventListener("pointerup", async (event) => {
        if (!start || !mapViewModel) return;
        const box = svg.getBoundingClientRect();
        const rect = {
            x0: start.x,
            y0: start.y,
            x1: event.clientX - box.left,
            y1: event.clientY - box.top,
        };
        start = null;
        const tiny = Math.abs(rect.x1 - rect.x0) < 4 && Math.abs(rect.y1 - rect.y0) < 4;
        const ids = tiny ? [] : pointsInRect(mapViewModel.points, rect);
        try {
            await applyMapSelection(api, store, ids);
        } catch (error) {
            showToast(String(error));
            return;
        }
        await refreshMatrix();
        await refreshMap();
        window.location.hash = store.serialize();
    });
}

function showToast(message: string): void {
    const node = element("toast");
    node.textContent = message;
    node.classList.add("visible");
    setTimeout(() => node.classList.remove("visible"), 4000);
}

async function boot(): Promise<void> {
    meta = await api.meta();
    const slider = element<HTMLInputElement>("lambda-slider");
    slider.addEventListener("change", async () => {
        store.update({ lambda: slider.value });
        await refreshMap();
        window.location.hash = store.serialize();
    });
    const colorMode = element<HTMLSelectElement>("color-mode");
    colorMode.addEventListener("change", async () => {
        store.update({ colorMode: colorMode.value as "class" | "pattern" });
        await refreshMap();
    });
    const orderSelect = element<HTMLSelectElement>("order-select");
    orderSelect.addEventListener("change", async () => {
        store.update({ order: orderSelect.value });
        await refreshMatrix();
    });
    const clearButton = element<HTMLButtonElement>("clear-selection");
    clearButton.addEventListener("click", async () => {
        await applyMapSelection(api, store, []);
        await refreshMatrix();
        await refreshMap();
    });
    await refreshMatrix();
    await refreshMap();
}

boot().catch((error) => showToast(String(error)));
