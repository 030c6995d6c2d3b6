import type { Draw2D } from "./context.js";
import type { TimelineEvent, TrackSample, WindowRow } from "../types.js";
import { actionColor } from "./donut.js";

/** Shared chart chrome. */
const AXIS = "#c6cad2";
const CURSOR = "#1d6ae5";
const STALE_TINT = "rgba(138,143,153,0.12)";

export function drawCursor(ctx: Draw2D, width: number, height: number, from: number, to: number, time: number): void {
  if (time < from || time > to || to <= from) return;
  const x = ((time - from) / (to - from)) * width;
  ctx.strokeStyle = CURSOR;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(x, 0);
  ctx.lineTo(x, height);
  ctx.stroke();
}

export function tintStale(ctx: Draw2D, width: number, height: number): void {
  ctx.fillStyle = STALE_TINT;
  ctx.fillRect(0, 0, width, height);
}

/** Full-session x/y position series (summary screen). */
export function drawXySeries(
  ctx: Draw2D,
  width: number,
  height: number,
  points: readonly { t: number; x: number; y: number }[],
  duration: number,
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = AXIS;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, height - 0.5);
  ctx.lineTo(width, height - 0.5);
  ctx.stroke();
  if (points.length === 0 || duration <= 0) return;

  const toX = (t: number) => (t / duration) * width;
  const toY = (v: number) => height - v * height;
  const lines: ["x" | "y", string][] = [
    ["x", "#4472c4"],
    ["y", "#ed7d31"],
  ];
  for (const [key, color] of lines) {
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    points.forEach((p, i) => {
      const px = toX(p.t);
      const py = toY(p[key]);
      if (i === 0) ctx.moveTo(px, py);
      else ctx.lineTo(px, py);
    });
    ctx.stroke();
  }
}

/** Per-window bar strip for one metric; windows with a null metric are skipped, not drawn as zero. */
export function drawWindowStrip(
  ctx: Draw2D,
  width: number,
  height: number,
  rows: readonly WindowRow[],
  from: number,
  to: number,
  metric: keyof WindowRow,
  scaleMax: number,
): void {
  ctx.clearRect(0, 0, width, height);
  if (to <= from) return;
  const toX = (t: number) => ((t - from) / (to - from)) * width;
  for (const row of rows) {
    if (row.end <= from || row.start >= to) continue;
    const value = row[metric];
    const x0 = toX(Math.max(row.start, from));
    const x1 = toX(Math.min(row.end, to));
    if (typeof value !== "number" || !Number.isFinite(value)) {
      ctx.fillStyle = "#f0f1f5";
      ctx.fillRect(x0 + 1, 0, Math.max(1, x1 - x0 - 2), height);
      continue;
    }
    const h = Math.min(1, value / scaleMax) * (height - 4);
    ctx.fillStyle = "#6d9bd8";
    ctx.fillRect(x0 + 1, height - h, Math.max(1, x1 - x0 - 2), h);
  }
  ctx.strokeStyle = AXIS;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(0, height - 0.5);
  ctx.lineTo(width, height - 0.5);
  ctx.stroke();
}

/** Event boxes laid out one lane per kind over [from, to]. */
export function drawEventStrip(
  ctx: Draw2D,
  width: number,
  height: number,
  events: readonly TimelineEvent[],
  from: number,
  to: number,
): void {
  ctx.clearRect(0, 0, width, height);
  if (to <= from) return;
  const kinds = [...new Set(events.map((e) => e.kind))].sort();
  const laneH = kinds.length > 0 ? height / kinds.length : height;
  const toX = (t: number) => ((t - from) / (to - from)) * width;
  events.forEach((event) => {
    if (event.end <= from || event.start >= to) return;
    const lane = kinds.indexOf(event.kind);
    const x0 = toX(Math.max(event.start, from));
    const x1 = toX(Math.min(event.end, to));
    ctx.fillStyle = actionColor(event.kind, lane);
    ctx.globalAlpha = 0.35 + 0.6 * Math.min(1, Math.max(0, event.confidence));
    ctx.fillRect(x0, lane * laneH + 2, Math.max(2, x1 - x0), laneH - 4);
    ctx.globalAlpha = 1;
  });
}

/** Floor-plane trace of the last minute; older samples fade out. */
export function drawTrace(
  ctx: Draw2D,
  width: number,
  height: number,
  samples: readonly TrackSample[],
  ages: readonly number[],
): void {
  ctx.clearRect(0, 0, width, height);
  ctx.strokeStyle = AXIS;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.rect(0.5, 0.5, width - 1, height - 1);
  ctx.stroke();
  if (samples.length === 0) {
    ctx.fillStyle = "#8a8f99";
    ctx.font = "12px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText("no samples in view", width / 2, height / 2);
    return;
  }
  for (let i = 1; i < samples.length; i += 1) {
    const a = samples[i - 1];
    const b = samples[i];
    ctx.globalAlpha = 1 - 0.85 * (ages[i] ?? 0);
    ctx.strokeStyle = "#1d6ae5";
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(a[1] * width, a[2] * height);
    ctx.lineTo(b[1] * width, b[2] * height);
    ctx.stroke();
  }
  ctx.globalAlpha = 1;
  const head = samples[samples.length - 1];
  ctx.fillStyle = "#d83a2e";
  ctx.beginPath();
  ctx.arc(head[1] * width, head[2] * height, 4, 0, 2 * Math.PI);
  ctx.fill();
}
