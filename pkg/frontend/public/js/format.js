// Metric values are shown exactly as the service serialized them, so a
// number on screen always matches the JSON payload byte for byte: counts
// as bare digits, ratios keeping their trailing ".0" when integral.
// Nothing is rounded or recomputed client-side.
export function fmtInt(value) {
    return String(value);
}
export function fmtFloat(value) {
    return Number.isInteger(value) ? value.toFixed(1) : String(value);
}
export function fmtSigned(value, fmt = fmtInt) {
    return value > 0 ? `+${fmt(value)}` : fmt(value);
}
export function escapeHtml(value) {
    return value
        .replaceAll("&", "&amp;")
        .replaceAll("<", "&lt;")
        .replaceAll(">", "&gt;")
        .replaceAll('"', "&quot;")
        .replaceAll("'", "&#39;");
}
