import { labelize } from "../format.js";
const TOP = -Math.PI / 2;
const ACTION_COLORS = [
    "#4472c4",
    "#ed7d31",
    "#70ad47",
    "#ffc000",
    "#7030a0",
    "#2e8b8b",
    "#c0504d",
    "#8064a2",
];
const NONE_COLOR = "#d6d9e0";
const ZONE_COLORS = {
    board: "#2d5fa8",
    students: "#e2902c",
};
const OTHER_ZONE_COLOR = "#b3b9c4";
export function actionColor(kind, index) {
    if (kind === "none")
        return NONE_COLOR;
    return ACTION_COLORS[index % ACTION_COLORS.length];
}
export function zoneColor(zone) {
    return ZONE_COLORS[zone] ?? OTHER_ZONE_COLOR;
}
export function sweepDegrees(fraction) {
    return fraction * 360;
}
/** Stable layout order: kinds alphabetical with the remainder last. */
function orderedKinds(outer) {
    const kinds = Object.keys(outer).filter((k) => k !== "none").sort();
    if ("none" in outer)
        kinds.push("none");
    return kinds;
}
export function donutLayout(outer, inner) {
    const segments = [];
    let angle = TOP;
    const kinds = orderedKinds(outer);
    let colorIndex = 0;
    for (const kind of kinds) {
        const fraction = outer[kind] ?? 0;
        const sweep = fraction * 2 * Math.PI;
        const start = angle;
        const end = angle + sweep;
        const color = actionColor(kind, colorIndex);
        if (kind !== "none")
            colorIndex += 1;
        segments.push({ ring: "outer", kind, zone: null, fraction, startAngle: start, endAngle: end, color });
        const zones = inner[kind];
        if (zones) {
            let sub = start;
            const zoneNames = Object.keys(zones).filter((z) => z !== "other").sort();
            if ("other" in zones)
                zoneNames.push("other");
            for (const zone of zoneNames) {
                const zoneFraction = zones[zone] ?? 0;
                const zoneSweep = zoneFraction * 2 * Math.PI;
                segments.push({
                    ring: "inner",
                    kind,
                    zone,
                    fraction: zoneFraction,
                    startAngle: sub,
                    endAngle: sub + zoneSweep,
                    color: zoneColor(zone),
                });
                sub += zoneSweep;
            }
        }
        angle = end;
    }
    return segments;
}
export function drawDonut(ctx, width, height, segments) {
    const cx = width / 2;
    const cy = height / 2;
    const radius = Math.min(width, height) / 2 - 4;
    ctx.clearRect(0, 0, width, height);
    for (const seg of segments) {
        if (seg.endAngle - seg.startAngle <= 1e-9)
            continue;
        const r1 = seg.ring === "outer" ? radius * 0.72 : radius * 0.44;
        const r2 = seg.ring === "outer" ? radius : radius * 0.68;
        ctx.beginPath();
        ctx.arc(cx, cy, r2, seg.startAngle, seg.endAngle);
        ctx.arc(cx, cy, r1, seg.endAngle, seg.startAngle, true);
        ctx.closePath();
        ctx.fillStyle = seg.color;
        ctx.fill();
        ctx.strokeStyle = "#ffffff";
        ctx.lineWidth = 1;
        ctx.stroke();
    }
}
export function donutLegend(segments) {
    return segments
        .filter((s) => s.ring === "outer" && s.fraction > 0)
        .map((s) => ({ label: labelize(s.kind), color: s.color, fraction: s.fraction }));
}
//# sourceMappingURL=donut.js.map