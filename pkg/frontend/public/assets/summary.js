import { donutLayout, donutLegend, drawDonut, zoneColor } from "./charts/donut.js";
import { drawHeatmap, heatmapView } from "./charts/heatmap.js";
import { clarityGauge, DEFAULT_NORMS, drawGauge, INSUFFICIENT, monotonyGauge, rateGauge } from "./charts/gauges.js";
import { drawXySeries } from "./charts/series.js";
import { get2d } from "./charts/context.js";
import { formatClock, formatNumber, formatPercent, labelize } from "./format.js";
/**
 * Summary screen: every figure below is read straight out of the summary
 * document; the dashboard does no analytics of its own.
 */
export function normsFrom(summary) {
    const served = summary.provenance?.config?.norms ?? {};
    const merged = { ...DEFAULT_NORMS, ...served };
    const band = merged.rate_band_wpm;
    return { ...merged, rate_band_wpm: [band[0], band[1]] };
}
export function speakPauseModel(sp) {
    const total = sp.speech_seconds + sp.pause_seconds;
    let ratioText;
    if (sp.infinite) {
        ratioText = "no pauses";
    }
    else if (sp.ratio === null) {
        ratioText = INSUFFICIENT;
    }
    else {
        ratioText = formatNumber(sp.ratio, 2);
    }
    return {
        speechText: formatClock(sp.speech_seconds),
        pauseText: formatClock(sp.pause_seconds),
        ratioText,
        speechFraction: total > 0 ? sp.speech_seconds / total : 0,
    };
}
export function teachingBalanceModel(ts) {
    if (!ts.available || ts.active_fraction === null || ts.passive_fraction === null)
        return null;
    return {
        activePct: formatPercent(ts.active_fraction),
        passivePct: formatPercent(ts.passive_fraction),
        activeFraction: ts.active_fraction,
    };
}
const VERDICT_LABELS = {
    speaking_rate: "speaking rate",
    clarity: "clarity",
    monotony: "intonation",
};
export function verdictRows(verdicts) {
    return Object.keys(verdicts)
        .sort()
        .map((key) => {
        const entry = verdicts[key];
        return {
            metric: VERDICT_LABELS[key] ?? labelize(key),
            valueText: entry.value === null ? INSUFFICIENT : formatNumber(entry.value, key === "speaking_rate" ? 0 : 2),
            verdict: entry.verdict,
        };
    });
}
export function occupancyRows(zones) {
    return Object.keys(zones)
        .sort()
        .map((zone) => {
        const value = zones[zone];
        return { zone, text: value === null ? INSUFFICIENT : formatPercent(value) };
    });
}
function el(tag, className, text) {
    const node = document.createElement(tag);
    if (className)
        node.className = className;
    if (text !== undefined)
        node.textContent = text;
    return node;
}
function panel(title) {
    const root = el("section", "panel");
    root.appendChild(el("h3", "panel-title", title));
    const body = el("div", "panel-body");
    root.appendChild(body);
    return { root, body };
}
function canvasIn(body, width, height) {
    const canvas = el("canvas");
    canvas.width = width;
    canvas.height = height;
    body.appendChild(canvas);
    return canvas;
}
function insufficientNote(body, text = INSUFFICIENT) {
    body.appendChild(el("p", "insufficient", text));
}
function renderDonutPanel(grid, summary) {
    const { root, body } = panel("time by action");
    const segments = donutLayout(summary.action_proportions.outer, summary.action_proportions.inner);
    const canvas = canvasIn(body, 260, 260);
    drawDonut(get2d(canvas), canvas.width, canvas.height, segments);
    const legend = el("ul", "legend");
    for (const entry of donutLegend(segments)) {
        const item = el("li");
        const swatch = el("span", "swatch");
        swatch.style.background = entry.color;
        item.appendChild(swatch);
        item.appendChild(el("span", undefined, `${entry.label} ${formatPercent(entry.fraction)}`));
        legend.appendChild(item);
    }
    const zones = el("li", "legend-zones");
    for (const zone of ["board", "students"]) {
        const swatch = el("span", "swatch");
        swatch.style.background = zoneColor(zone);
        zones.appendChild(swatch);
        zones.appendChild(el("span", undefined, `near ${zone} `));
    }
    legend.appendChild(zones);
    body.appendChild(legend);
    grid.appendChild(root);
}
function renderBalancePanel(grid, summary) {
    const { root, body } = panel("teaching style");
    const model = teachingBalanceModel(summary.teaching_style);
    if (!model) {
        insufficientNote(body);
    }
    else {
        const bar = el("div", "balance-bar");
        const active = el("div", "balance-active", `active ${model.activePct}`);
        active.style.width = `${model.activeFraction * 100}%`;
        const passive = el("div", "balance-passive", `passive ${model.passivePct}`);
        bar.appendChild(active);
        bar.appendChild(passive);
        body.appendChild(bar);
    }
    const occupancy = el("ul", "occupancy");
    for (const row of occupancyRows(summary.zone_occupancy)) {
        occupancy.appendChild(el("li", undefined, `time near ${row.zone}: ${row.text}`));
    }
    body.appendChild(occupancy);
    grid.appendChild(root);
}
function renderSpeakingPanel(grid, summary) {
    const { root, body } = panel("speaking style");
    const norms = normsFrom(summary);
    const metrics = summary.speaking_style.metrics;
    const gauges = [
        rateGauge(metrics.speaking_rate_wpm ?? null, norms),
        clarityGauge(metrics.clarity ?? null, norms),
        monotonyGauge(metrics.monotony ?? null, norms),
    ];
    for (const model of gauges) {
        const row = el("div", "gauge-row");
        row.appendChild(el("span", "gauge-label", model.label));
        const canvas = el("canvas");
        canvas.width = 280;
        canvas.height = 52;
        row.appendChild(canvas);
        drawGauge(get2d(canvas), canvas.width, canvas.height, model);
        const readout = el("span", model.value === null ? "gauge-value insufficient" : "gauge-value", model.display);
        row.appendChild(readout);
        body.appendChild(row);
    }
    const verdicts = el("ul", "verdicts");
    for (const row of verdictRows(summary.speaking_style.verdicts)) {
        const item = el("li");
        item.appendChild(el("span", undefined, `${row.metric}: `));
        item.appendChild(el("span", `verdict verdict-${row.verdict.replace(/\s+/g, "-")}`, row.verdict));
        verdicts.appendChild(item);
    }
    body.appendChild(verdicts);
    const score = summary.speaking_style.score;
    if (score && score.ew_score !== null && score.rw_score !== null) {
        body.appendChild(el("p", "score-line", `score: ${formatNumber(score.rw_score, 1)} (reliability weighted) / ${formatNumber(score.ew_score, 1)} (equal weights)`));
    }
    else {
        insufficientNote(body, `score: ${INSUFFICIENT}`);
    }
    grid.appendChild(root);
}
function renderSpeakPausePanel(grid, summary) {
    const { root, body } = panel("speech and pauses");
    const model = speakPauseModel(summary.speak_pause_ratio);
    const bar = el("div", "balance-bar");
    const speech = el("div", "speech-part", `speech ${model.speechText}`);
    speech.style.width = `${model.speechFraction * 100}%`;
    bar.appendChild(speech);
    bar.appendChild(el("div", "pause-part", `pauses ${model.pauseText}`));
    body.appendChild(bar);
    body.appendChild(el("p", model.ratioText === INSUFFICIENT ? "insufficient" : "", `speak/pause ratio: ${model.ratioText}`));
    grid.appendChild(root);
}
function renderHeatmapPanel(grid, summary) {
    const { root, body } = panel("position heatmap");
    const view = heatmapView(summary.heatmap);
    const canvas = canvasIn(body, 400, 240);
    drawHeatmap(get2d(canvas), canvas.width, canvas.height, view);
    grid.appendChild(root);
}
function renderXyPanel(grid, summary) {
    const { root, body } = panel("position over time");
    const canvas = canvasIn(body, 560, 160);
    drawXySeries(get2d(canvas), canvas.width, canvas.height, summary.xy_series, summary.duration);
    const caption = el("p", "caption");
    caption.innerHTML = '<span class="swatch" style="background:#4472c4"></span> x ' +
        '<span class="swatch" style="background:#ed7d31"></span> y';
    body.appendChild(caption);
    grid.appendChild(root);
}
export function renderSummary(host, summary) {
    host.textContent = "";
    const header = el("div", "screen-header");
    header.appendChild(el("h2", undefined, summary.session_id));
    header.appendChild(el("p", "meta", `${formatClock(summary.duration)} session, analyzed with ${summary.provenance.tool} ${summary.provenance.version}`));
    host.appendChild(header);
    const grid = el("div", "panel-grid");
    renderDonutPanel(grid, summary);
    renderBalancePanel(grid, summary);
    renderSpeakingPanel(grid, summary);
    renderSpeakPausePanel(grid, summary);
    renderHeatmapPanel(grid, summary);
    renderXyPanel(grid, summary);
    host.appendChild(grid);
}
//# sourceMappingURL=summary.js.map