import type { ApiClient } from "./api.js";
import type { PatternRow, PatternsResponse, SelectionResponse } from "./types.js";
import type { ColorMode } from "./map.js";

export interface MatrixFilters {
    classes?: string[];
    minSupport?: number;
    coverageTarget?: number;
    instances?: number[];
}

export interface AppState {
    order: string;
    filters: MatrixFilters;
    selection: number[];
    lambda: string;
    colorMode: ColorMode;
    pinnedTopCount: number;
    hoverPatternId: number | null;
}

export const INITIAL_STATE: AppState = {
    order: "support",
    filters: {},
    selection: [],
    lambda: "auto",
    colorMode: "class",
    pinnedTopCount: 3,
    hoverPatternId: null,
};

type Listener = (state: AppState) => void;

/** Single serializable view-state store; the URL hash round-trips it so
 * sessions can be shared. */
export class Store {
    private state: AppState;
    private listeners: Listener[] = [];

    constructor(initial: Partial<AppState> = {}) {
        this.state = { ...INITIAL_STATE, ...initial };
    }

    get(): AppState {
        return this.state;
    }

    update(partial: Partial<AppState>): AppState {
        this.state = { ...this.state, ...partial };
        for (const listener of this.listeners) listener(this.state);
        return this.state;
    }

    subscribe(listener: Listener): () => void {
        this.listeners.push(listener);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== listener);
        };
    }

    serialize(): string {
        return encodeURIComponent(JSON.stringify(this.state));
    }

    static deserialize(text: string): Store {
        try {
            return new Store(JSON.parse(decodeURIComponent(text)) as Partial<AppState>);
        } catch {
            return new Store();
        }
    }
}

/** Brush handler: an empty brush clears the selection and filters; anything
 * else posts the selection and filters the matrix to the supporting
 * patterns. */
export async function applyMapSelection(
    api: ApiClient,
    store: Store,
    instanceIds: number[],
): Promise<SelectionResponse | null> {
    if (!instanceIds.length) {
        store.update({ selection: [], filters: {}, hoverPatternId: null });
        return null;
    }
    const response = await api.selection(instanceIds);
    store.update({
        selection: instanceIds,
        filters: { instances: response.suggested_filter.instances },
    });
    return response;
}

export interface MatrixRows {
    rows: PatternRow[];
    order: string;
    coverage: number;
    totalPatterns: number;
}

function dedupeRows(primary: PatternRow[], extra: PatternRow[]): PatternRow[] {
    const seen = new Set(primary.map((row) => row.pattern_id));
    const merged = [...primary];
    for (const row of extra) {
        if (!seen.has(row.pattern_id)) {
            seen.add(row.pattern_id);
            merged.push(row);
        }
    }
    merged.sort((a, b) => b.support - a.support);
    return merged;
}

/** Matrix rows for the current state: the filtered response, plus the pinned
 * top-support rows when an instance selection is active. Every row keeps the
 * exact values of the response it came from. */
export async function fetchMatrixRows(api: ApiClient, store: Store): Promise<MatrixRows> {
    const state = store.get();
    const filtered: PatternsResponse = await api.patterns({
        classes: state.filters.classes,
        min_support: state.filters.minSupport,
        coverage_target: state.filters.coverageTarget,
        instances: state.filters.instances,
        order: state.order,
    });
    let rows = filtered.rows;
    if (state.filters.instances?.length && state.pinnedTopCount > 0) {
        const base = await api.patterns({ order: "support" });
        rows = dedupeRows(rows, base.rows.slice(0, state.pinnedTopCount));
    }
    return {
        rows,
        order: filtered.order,
        coverage: filtered.coverage,
        totalPatterns: filtered.total_patterns,
    };
}

/** Hovering a matrix row highlights exactly its supported instances. */
export function hoverHighlight(rows: PatternRow[], patternId: number | null): number[] {
    if (patternId === null) return [];
    const row = rows.find((r) => r.pattern_id === patternId);
    return row ? [...row.supported_instance_ids] : [];
}
