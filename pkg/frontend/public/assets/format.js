export function clamp(value, lo, hi) {
    return Math.min(hi, Math.max(lo, value));
}
/** 65.3 -> "1:05", 3725 -> "1:02:05". */
export function formatClock(seconds) {
    const total = Math.max(0, Math.floor(seconds));
    const h = Math.floor(total / 3600);
    const m = Math.floor((total % 3600) / 60);
    const s = total % 60;
    if (h > 0) {
        return `${h}:${String(m).padStart(2, "0")}:${String(s).padStart(2, "0")}`;
    }
    return `${m}:${String(s).padStart(2, "0")}`;
}
export function formatNumber(value, digits = 1) {
    return value.toFixed(digits);
}
/** Percentage with no decimals: 0.25 -> "25%". */
export function formatPercent(fraction) {
    return `${Math.round(fraction * 100)}%`;
}
/** Replace underscores so action kinds read as labels. */
export function labelize(kind) {
    return kind.replace(/_/g, " ");
}
//# sourceMappingURL=format.js.map