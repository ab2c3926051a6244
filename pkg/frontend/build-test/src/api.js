export function patternQueryString(query = {}) {
    const params = new URLSearchParams();
    if (query.classes?.length)
        params.set("classes", query.classes.join(","));
    if (query.min_support !== undefined)
        params.set("min_support", String(query.min_support));
    if (query.coverage_target !== undefined) {
        params.set("coverage_target", String(query.coverage_target));
    }
    if (query.instances?.length)
        params.set("instances", query.instances.join(","));
    if (query.order)
        params.set("order", query.order);
    if (query.all_cells)
        params.set("all_cells", "true");
    const text = params.toString();
    return text ? `?${text}` : "";
}
export class HttpApiClient {
    base;
    constructor(base = "") {
        this.base = base;
    }
    async get(path) {
        const response = await fetch(this.base + path);
        if (!response.ok) {
            throw new Error(`${path}: ${response.status} ${await response.text()}`);
        }
        return (await response.json());
    }
    meta() {
        return this.get("/api/meta");
    }
    patterns(query = {}) {
        return this.get(`/api/patterns${patternQueryString(query)}`);
    }
    map(lambda) {
        return this.get(`/api/map?lambda=${encodeURIComponent(lambda)}`);
    }
    async selection(instanceIds) {
        const response = await fetch(`${this.base}/api/selection`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ instance_ids: instanceIds }),
        });
        if (!response.ok) {
            throw new Error(`/api/selection: ${response.status} ${await response.text()}`);
        }
        return (await response.json());
    }
}
