import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
// Compiled tests run from build-test/tests/, fixtures live in tests/fixtures/.
const FIXTURES = fileURLToPath(new URL("../../tests/fixtures/", import.meta.url));
export function fixture(name) {
    return JSON.parse(readFileSync(FIXTURES + name, "utf-8"));
}
export function loadFixtures() {
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
function sameIds(a, b) {
    if (a.length !== b.length)
        return false;
    const sortedA = [...a].sort((x, y) => x - y);
    const sortedB = [...b].sort((x, y) => x - y);
    return sortedA.every((v, i) => v === sortedB[i]);
}
/** Serves only the canned responses captured from a real service run; any
 * query the fixtures do not cover is an error, keeping tests honest. */
export class FakeApiClient {
    fixtures;
    constructor(fixtures = loadFixtures()) {
        this.fixtures = fixtures;
    }
    async meta() {
        return this.fixtures.meta;
    }
    async patterns(query = {}) {
        const instances = query.instances ?? [];
        if (!instances.length)
            return this.fixtures.patternsSupport;
        if (sameIds(instances, this.fixtures.manifest.target_instance_ids)) {
            return this.fixtures.patternsSingle;
        }
        if (sameIds(instances, this.fixtures.manifest.multi_instance_ids)) {
            return this.fixtures.patternsMulti;
        }
        throw new Error(`no fixture for instances=${instances.join(",")}`);
    }
    async map(lambda) {
        if (lambda === "0" || lambda === "0.0")
            return this.fixtures.map000;
        return this.fixtures.mapAuto;
    }
    async selection(instanceIds) {
        if (sameIds(instanceIds, this.fixtures.manifest.target_instance_ids)) {
            return this.fixtures.selectionSingle;
        }
        if (sameIds(instanceIds, this.fixtures.manifest.multi_instance_ids)) {
            return this.fixtures.selectionMulti;
        }
        throw new Error(`no fixture for selection=${instanceIds.join(",")}`);
    }
}
