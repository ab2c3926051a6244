import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";

import type { ApiClient } from "../src/api.js";
import type {
    MapResponse,
    MetaResponse,
    PatternQuery,
    PatternsResponse,
    SelectionResponse,
} from "../src/types.js";

// Compiled tests run from build-test/tests/, fixtures live in tests/fixtures/.
const FIXTURES = fileURLToPath(new URL("../../tests/fixtures/", import.meta.url));

export function fixture<T>(name: string): T {
    return JSON.parse(readFileSync(FIXTURES + name, "utf-8")) as T;
}

export interface FixtureSet {
    manifest: {
        target_pattern_id: number;
        target_instance_ids: number[];
        multi_pattern_ids: number[];
        multi_instance_ids: number[];
        resolved_lambda: number;
    };
    meta: MetaResponse;
    patternsSupport: PatternsResponse;
    map000: MapResponse;
    mapAuto: MapResponse;
    selectionSingle: SelectionResponse;
    patternsSingle: PatternsResponse;
    selectionMulti: SelectionResponse;
    patternsMulti: PatternsResponse;
}

export function loadFixtures(): FixtureSet {
    return {
        manifest: fixture("fixture_manifest.json"),
        meta: fixture("meta.json"),
        patternsSupport: fixture("patterns_support.json"),
        map000: fixture("map_000.json"),
        mapAuto: fixture("map_auto.json"),
        selectionSingle: fixture("selection_single.json"),
        patternsSingle: fixture("patterns_instances_single.json"),
        selectionMulti: fixture("selection_multi.json"),
        patternsMulti: fixture("patterns_instances_multi.json"),
    };
}

function sameIds(a: number[], b: number[]): boolean {
    if (a.length !== b.length) return false;
    const sortedA = [...a].sort((x, y) => x - y);
    const sortedB = [...b].sort((x, y) => x - y);
    return sortedA.every((v, i) => v === sortedB[i]);
}

/** Serves only the canned responses captured from a real service run; any
 * query the fixtures do not cover is an error, keeping tests honest. */
export class FakeApiClient implements ApiClient {
    constructor(private readonly fixtures: FixtureSet = loadFixtures()) {}

    async meta(): Promise<MetaResponse> {
        return this.fixtures.meta;
    }

    async patterns(query: PatternQuery = {}): Promise<PatternsResponse> {
        const instances = query.instances ?? [];
        if (!instances.length) return this.fixtures.patternsSupport;
        if (sameIds(instances, this.fixtures.manifest.target_instance_ids)) {
            return this.fixtures.patternsSingle;
        }
        if (sameIds(instances, this.fixtures.manifest.multi_instance_ids)) {
            return this.fixtures.patternsMulti;
        }
        throw new Error(`no fixture for instances=${instances.join(",")}`);
    }

    async map(lambda: string): Promise<MapResponse> {
        if (lambda === "0" || lambda === "0.0") return this.fixtures.map000;
        return this.fixtures.mapAuto;
    }

    async selection(instanceIds: number[]): Promise<SelectionResponse> {
        if (sameIds(instanceIds, this.fixtures.manifest.target_instance_ids)) {
            return this.fixtures.selectionSingle;
        }
        if (sameIds(instanceIds, this.fixtures.manifest.multi_instance_ids)) {
            return this.fixtures.selectionMulti;
        }
        throw new Error(`no fixture for selection=${instanceIds.join(",")}`);
    }
}
