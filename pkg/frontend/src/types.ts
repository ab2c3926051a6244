/** Wire types served by the HTTP API (see GET /api/schema). */

export interface VariableMeta {
    name: string;
    index: number;
    importance: number;
    edges: number[];
}

export interface DatasetMeta {
    n_rows: number;
    n_variables: number;
    classes: string[];
    class_counts: Record<string, number>;
    variables: VariableMeta[];
}

export interface MetaResponse {
    dataset: DatasetMeta;
    manifest: Record<string, unknown>;
}

export interface Selector {
    variable: string;
    low: number;
    high: number;
}

export interface HistogramCell {
    variable: string;
    counts: number[];
}

export interface PatternRow {
    pattern_id: number;
    class: string;
    support: number;
    confidence: number;
    fet_p: number;
    fet_significant: boolean;
    cumulative_coverage: number;
    aggregated_from: number;
    selectors: Selector[];
    supported_instance_ids: number[];
    cells: HistogramCell[];
}

export interface PatternsResponse {
    order: string;
    total_patterns: number;
    coverage: number;
    rows: PatternRow[];
}

export interface MapPoint {
    instance_id: number;
    x: number;
    y: number;
    class: string;
    pattern_id: number | null;
}

export interface MapResponse {
    lambda_requested: string;
    lambda_used: number;
    stress: number;
    silhouette_inverted: number;
    points: MapPoint[];
}

export interface InstancePattern {
    instance_id: number;
    pattern_id: number | null;
}

export interface SelectionResponse {
    instances: InstancePattern[];
    pattern_ids: number[];
    unsupported_instance_ids: number[];
    suggested_filter: { instances: number[] };
}

export interface PatternQuery {
    classes?: string[];
    min_support?: number;
    coverage_target?: number;
    instances?: number[];
    order?: string;
    all_cells?: boolean;
}
