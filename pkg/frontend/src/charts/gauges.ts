import type { Draw2D } from "./context.js";
import type { StyleNorms } from "../types.js";
import { clamp, formatNumber } from "../format.js";

/**
 * Speaking-style gauges with the published norm markers. Missing metrics stay
 * missing: the needle disappears and the readout says so, a null is never
 * drawn as a zero.
 */

export const INSUFFICIENT = "insufficient data";

export const DEFAULT_NORMS: StyleNorms = {
  rate_target_wpm: 140,
  rate_band_wpm: [125, 155],
  clarity_optimal: 0.75,
  clarity_acceptable: 0.5,
  monotony_low: 0.4,
  monotony_high: 1.6,
};

export interface Band {
  label: string;
  from: number;
  to: number;
  color: string;
}

export interface Marker {
  value: number;
  label: string;
}

export interface GaugeModel {
  label: string;
  min: number;
  max: number;
  bands: Band[];
  markers: Marker[];
  value: number | null;
  /** Needle position in gauge units, or null when the metric is unavailable. */
  needle: number | null;
  display: string;
}

function needleFor(value: number | null, min: number, max: number): number | null {
  if (value === null || !Number.isFinite(value)) return null;
  return clamp(value, min, max);
}

export function rateGauge(value: number | null, norms: StyleNorms = DEFAULT_NORMS): GaugeModel {
  const [bandLo, bandHi] = norms.rate_band_wpm;
  const max = Math.max(200, bandHi + 20, value ?? 0);
  return {
    label: "speaking rate",
    min: 0,
    max,
    bands: [
      { label: "below", from: 0, to: bandLo, color: "#f0f1f5" },
      { label: "within", from: bandLo, to: bandHi, color: "#d8e8d4" },
      { label: "above", from: bandHi, to: max, color: "#f0f1f5" },
    ],
    markers: [{ value: norms.rate_target_wpm, label: `${norms.rate_target_wpm} wpm` }],
    value,
    needle: needleFor(value, 0, max),
    display: value === null ? INSUFFICIENT : `${formatNumber(value, 0)} wpm`,
  };
}

export function clarityGauge(value: number | null, norms: StyleNorms = DEFAULT_NORMS): GaugeModel {
  return {
    label: "clarity",
    min: 0,
    max: 1,
    bands: [
      { label: "suboptimal", from: 0, to: norms.clarity_acceptable, color: "#f4e3e0" },
      { label: "acceptable", from: norms.clarity_acceptable, to: norms.clarity_optimal, color: "#f0ecd8" },
      { label: "optimal", from: norms.clarity_optimal, to: 1, color: "#d8e8d4" },
    ],
    markers: [{ value: norms.clarity_optimal, label: String(norms.clarity_optimal) }],
    value,
    needle: needleFor(value, 0, 1),
    display: value === null ? INSUFFICIENT : formatNumber(value, 2),
  };
}

export function monotonyGauge(value: number | null, norms: StyleNorms = DEFAULT_NORMS): GaugeModel {
  const max = Math.max(norms.monotony_high + 0.8, value ?? 0);
  return {
    label: "intonation",
    min: 0,
    max,
    bands: [
      { label: "monotonous", from: 0, to: norms.monotony_low, color: "#f4e3e0" },
      { label: "average", from: norms.monotony_low, to: norms.monotony_high, color: "#f0f1f5" },
      { label: "lively", from: norms.monotony_high, to: max, color: "#d8e8d4" },
    ],
    markers: [
      { value: norms.monotony_low, label: String(norms.monotony_low) },
      { value: norms.monotony_high, label: String(norms.monotony_high) },
    ],
    value,
    needle: needleFor(value, 0, max),
    display: value === null ? INSUFFICIENT : formatNumber(value, 2),
  };
}

/** Band that contains `value`; bands are [from, to), last band closed. */
export function bandAt(model: GaugeModel, value: number): Band | null {
  for (let i = 0; i < model.bands.length; i += 1) {
    const band = model.bands[i];
    const last = i === model.bands.length - 1;
    if (value >= band.from && (value < band.to || (last && value <= band.to))) return band;
  }
  return null;
}

export function drawGauge(ctx: Draw2D, width: number, height: number, model: GaugeModel): void {
  const barY = height * 0.35;
  const barH = height * 0.3;
  const span = model.max - model.min;
  const toX = (v: number) => ((v - model.min) / span) * width;

  ctx.clearRect(0, 0, width, height);
  for (const band of model.bands) {
    ctx.fillStyle = band.color;
    ctx.fillRect(toX(band.from), barY, toX(band.to) - toX(band.from), barH);
  }
  for (const marker of model.markers) {
    const x = toX(marker.value);
    ctx.strokeStyle = "#5a5f6b";
    ctx.lineWidth = 1;
    ctx.setLineDash([3, 2]);
    ctx.beginPath();
    ctx.moveTo(x, barY - 4);
    ctx.lineTo(x, barY + barH + 4);
    ctx.stroke();
    ctx.setLineDash([]);
    ctx.fillStyle = "#5a5f6b";
    ctx.font = "10px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "alphabetic";
    ctx.fillText(marker.label, x, barY - 7);
  }
  if (model.needle !== null) {
    const x = toX(model.needle);
    ctx.fillStyle = "#1f2430";
    ctx.beginPath();
    ctx.moveTo(x, barY + barH + 2);
    ctx.lineTo(x - 5, barY + barH + 11);
    ctx.lineTo(x + 5, barY + barH + 11);
    ctx.closePath();
    ctx.fill();
  }
}
