export const INITIAL_STATE = {
    order: "support",
    filters: {},
    selection: [],
    lambda: "auto",
    colorMode: "class",
    pinnedTopCount: 3,
    hoverPatternId: null,
};
/** Single serializable view-state store; the URL hash round-trips it so
 * sessions can be shared. */
export class Store {
    state;
    listeners = [];
    constructor(initial = {}) {
        this.state = { ...INITIAL_STATE, ...initial };
    }
    get() {
        return this.state;
    }
    update(partial) {
        this.state = { ...this.state, ...partial };
        for (const listener of this.listeners)
            listener(this.state);
        return this.state;
    }
    subscribe(listener) {
        this.listeners.push(listener);
        return () => {
            this.listeners = this.listeners.filter((l) => l !== listener);
        };
    }
    serialize() {
        return encodeURIComponent(JSON.stringify(this.state));
    }
    static deserialize(text) {
        try {
            return new Store(JSON.parse(decodeURIComponent(text)));
        }
        catch {
            return new Store();
        }
    }
}
/** Brush handler: an empty brush clears the selection and filters; anything
 * else posts the selection and filters the matrix to the supporting
 * patterns. */
export async function applyMapSelection(api, store, instanceIds) {
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
function dedupeRows(primary, extra) {
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
export async function fetchMatrixRows(api, store) {
    const state = store.get();
    const filtered = await api.patterns({
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
export function hoverHighlight(rows, patternId) {
    if (patternId === null)
        return [];
    const row = rows.find((r) => r.pattern_id === patternId);
    return row ? [...row.supported_instance_ids] : [];
}
