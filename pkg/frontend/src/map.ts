import { CLASS_PALETTE, UNSUPPORTED_GRAY, classColor } from "./palette.js";
import type { MapResponse, MetaResponse } from "./types.js";

export type ColorMode = "class" | "pattern";

export interface MapPointVM {
    instanceId: number;
    x: number; // view coordinates
    y: number;
    fill: string;
    gray: boolean;
    patternId: number | null;
    className: string;
}

export interface MapViewModel {
    points: MapPointVM[];
    lambdaUsed: number;
    stress: number;
    silhouetteInverted: number;
    colorMode: ColorMode;
    width: number;
    height: number;
}

export interface BuildMapOptions {
    colorMode: ColorMode;
    /** Patterns of interest; in pattern color mode, instances supported by
     * anything else render gray, exactly as served. */
    patternsOfInterest?: number[];
    width?: number;
    height?: number;
}

export function buildMapViewModel(
    map: MapResponse,
    meta: MetaResponse,
    options: BuildMapOptions,
): MapViewModel {
    const width = options.width ?? 480;
    const height = options.height ?? 480;
    const margin = 16;
    const xs = map.points.map((p) => p.x);
    const ys = map.points.map((p) => p.y);
    const xMin = Math.min(...xs);
    const xMax = Math.max(...xs);
    const yMin = Math.min(...ys);
    const yMax = Math.max(...ys);
    const xSpan = xMax - xMin || 1;
    const ySpan = yMax - yMin || 1;
    const interest = options.patternsOfInterest ?? [];
    const patternColor = new Map(
        interest.map((pid, i) => [pid, CLASS_PALETTE[i % CLASS_PALETTE.length]]),
    );
    const points = map.points.map((point) => {
        let fill: string;
        let gray = false;
        if (options.colorMode === "class") {
            fill = classColor(meta.dataset.classes, point.class);
        } else if (point.pattern_id !== null && patternColor.has(point.pattern_id)) {
            fill = patternColor.get(point.pattern_id)!;
        } else {
            fill = UNSUPPORTED_GRAY;
            gray = true;
        }
        return {
            instanceId: point.instance_id,
            x: margin + ((point.x - xMin) / xSpan) * (width - 2 * margin),
            y: margin + ((point.y - yMin) / ySpan) * (height - 2 * margin),
            fill,
            gray,
            patternId: point.pattern_id,
            className: point.class,
        };
    });
    return {
        points,
        lambdaUsed: map.lambda_used,
        stress: map.stress,
        silhouetteInverted: map.silhouette_inverted,
        colorMode: options.colorMode,
        width,
        height,
    };
}

/** Instance ids inside a brush rectangle given in view coordinates. */
export function pointsInRect(
    points: MapPointVM[],
    rect: { x0: number; y0: number; x1: number; y1: number },
): number[] {
    const xLo = Math.min(rect.x0, rect.x1);
    const xHi = Math.max(rect.x0, rect.x1);
    const yLo = Math.min(rect.y0, rect.y1);
    const yHi = Math.max(rect.y0, rect.y1);
    return points
        .filter((p) => p.x >= xLo && p.x <= xHi && p.y >= yLo && p.y <= yHi)
        .map((p) => p.instanceId);
}

export function renderMap(vm: MapViewModel, highlighted?: Set<number>): string {
    const circles = vm.points
        .map((point) => {
            const active = highlighted?.has(point.instanceId) ?? false;
            const radius = active ? 5 : 3;
            const classes = ["point"];
            if (point.gray) classes.push("point-gray");
            if (active) classes.push("point-highlighted");
            return (
                `<circle class="${classes.join(" ")}" data-instance-id="${point.instanceId}" ` +
                `data-pattern-id="${point.patternId ?? ""}" cx="${point.x.toFixed(2)}" ` +
                `cy="${point.y.toFixed(2)}" r="${radius}" fill="${point.fill}" ` +
                `stroke="${active ? "#111" : "none"}"></circle>`
            );
        })
        .join("");
    return (
        `<svg class="similarity-map" data-lambda="${vm.lambdaUsed}" data-stress="${vm.stress}" ` +
        `data-silhouette-inverted="${vm.silhouetteInverted}" viewBox="0 0 ${vm.width} ${vm.height}" ` +
        `width="${vm.width}" height="${vm.height}">${circles}</svg>`
    );
}
