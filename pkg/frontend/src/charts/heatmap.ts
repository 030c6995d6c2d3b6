import type { Draw2D } from "./context.js";

/**
 * Occupancy heatmap colouring. A session with no position samples renders a
 * flat neutral grid, never NaN-tinted cells.
 */

export interface HeatmapView {
  rows: number;
  cols: number;
  empty: boolean;
  max: number;
  colors: string[][];
}

const NEUTRAL = "#eceef2";
const LOW = [0xf2, 0xf5, 0xfa] as const;
const HIGH = [0x14, 0x3a, 0x6e] as const;

function cellColor(count: number, max: number): string {
  // sqrt stretch so sparse visits stay visible next to the podium hot spot
  const intensity = Math.sqrt(count / max);
  const r = Math.round(LOW[0] + (HIGH[0] - LOW[0]) * intensity);
  const g = Math.round(LOW[1] + (HIGH[1] - LOW[1]) * intensity);
  const b = Math.round(LOW[2] + (HIGH[2] - LOW[2]) * intensity);
  return `rgb(${r},${g},${b})`;
}

export function heatmapView(heat: { rows: number; cols: number; counts: number[][]; total: number }): HeatmapView {
  let max = 0;
  for (const row of heat.counts) {
    for (const count of row) max = Math.max(max, count);
  }
  const empty = heat.total <= 0 || max <= 0;
  const colors = heat.counts.map((row) =>
    row.map((count) => (empty ? NEUTRAL : cellColor(count, max))),
  );
  return { rows: heat.rows, cols: heat.cols, empty, max, colors };
}

export function drawHeatmap(ctx: Draw2D, width: number, height: number, view: HeatmapView): void {
  ctx.clearRect(0, 0, width, height);
  const cellW = width / view.cols;
  const cellH = height / view.rows;
  for (let r = 0; r < view.rows; r += 1) {
    for (let c = 0; c < view.cols; c += 1) {
      ctx.fillStyle = view.colors[r]?.[c] ?? NEUTRAL;
      ctx.fillRect(c * cellW, r * cellH, Math.ceil(cellW), Math.ceil(cellH));
    }
  }
  if (view.empty) {
    ctx.fillStyle = "#8a8f99";
    ctx.font = "13px system-ui, sans-serif";
    ctx.textAlign = "center";
    ctx.textBaseline = "middle";
    ctx.fillText("no position data", width / 2, height / 2);
  }
}
