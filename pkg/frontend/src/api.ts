import type {
    MapResponse,
    MetaResponse,
    PatternQuery,
    PatternsResponse,
    SelectionResponse,
} from "./types.js";

/** The UI talks to the world exclusively through this interface; tests
 * substitute a canned fixture client. */
export interface ApiClient {
    meta(): Promise<MetaResponse>;
    patterns(query?: PatternQuery): Promise<PatternsResponse>;
    map(lambda: string): Promise<MapResponse>;
    selection(instanceIds: number[]): Promise<SelectionResponse>;
}

export function patternQueryString(query: PatternQuery = {}): string {
    const params = new URLSearchParams();
    if (query.classes?.length) params.set("classes", query.classes.join(","));
    if (query.min_support !== undefined) params.set("min_support", String(query.min_support));
    if (query.coverage_target !== undefined) {
        params.set("coverage_target", String(query.coverage_target));
    }
    if (query.instances?.length) params.set("instances", query.instances.join(","));
    if (query.order) params.set("order", query.order);
    if (query.all_cells) params.set("all_cells", "true");
    const text = params.toString();
    return text ? `?${text}` : "";
}

export class HttpApiClient implements ApiClient {
    constructor(private readonly base: string = "") {}

    private async get<T>(path: string): Promise<T> {
        const response = await fetch(this.base + path);
        if (!response.ok) {
            throw new Error(`${path}: ${response.status} ${await response.text()}`);
        }
        return (await response.json()) as T;
    }

    meta(): Promise<MetaResponse> {
        return this.get("/api/meta");
    }

    patterns(query: PatternQuery = {}): Promise<PatternsResponse> {
        return this.get(`/api/patterns${patternQueryString(query)}`);
    }

    map(lambda: string): Promise<MapResponse> {
        return this.get(`/api/map?lambda=${encodeURIComponent(lambda)}`);
    }

    async selection(instanceIds: number[]): Promise<SelectionResponse> {
        const response = await fetch(`${this.base}/api/selection`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ instance_ids: instanceIds }),
        });
        if (!response.ok) {
            throw new Error(`/api/selection: ${response.status} ${await response.text()}`);
        }
        return (await response.json()) as SelectionResponse;
    }
}
