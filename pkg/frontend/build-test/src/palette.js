/** Color and size encodings. Classes map onto a fixed 10-color categorical
 * palette in dataset class order; magnitudes map to linear (optionally log)
 * grayscale plus width. */
export const CLASS_PALETTE = [
    "#4e79a7",
    "#f28e2b",
    "#59a14f",
    "#9c755f",
    "#edc948",
    "#b07aa1",
    "#76b7b2",
    "#ff9da7",
    "#e15759",
    "#bab0ac",
];
export const FET_SIGNIFICANT_COLOR = "#2e7d32"; // green
export const FET_INSIGNIFICANT_COLOR = "#7b1fa2"; // purple
export const UNSUPPORTED_GRAY = "#bbbbbb";
export function classColor(classes, name) {
    const idx = classes.indexOf(name);
    return CLASS_PALETTE[(idx >= 0 ? idx : classes.length) % CLASS_PALETTE.length];
}
/** Map a value in [0, 1] onto [0, 1] for size/brightness. */
export function scaleValue(value, kind = "linear") {
    const clamped = Math.max(0, Math.min(1, value));
    if (kind === "log") {
        return Math.log10(1 + 9 * clamped);
    }
    return clamped;
}
/** Brightness encoding: 0 -> white-ish, 1 -> black. */
export function grayscale(value, kind = "linear") {
    const level = Math.round(255 * (1 - scaleValue(value, kind)));
    return `rgb(${level},${level},${level})`;
}
