import type { TrackSample } from "./types.js";

/** Seconds of position history shown on the review trace panel. */
export const TRACE_SPAN_SECONDS = 60;

/**
 * Samples visible on the trace at time `now`: the half-open window
 * (now - span, now]. A sample exactly at `now` is included, one exactly
 * `span` seconds old is not.
 */
export function traceWindow(
  samples: readonly TrackSample[],
  now: number,
  span = TRACE_SPAN_SECONDS,
): TrackSample[] {
  const lo = now - span;
  return samples.filter((s) => s[0] > lo && s[0] <= now);
}

/**
 * Per-sample age fraction for fading the trail: 0 for the newest end of the
 * window, 1 at the oldest edge.
 */
export function traceAges(samples: readonly TrackSample[], now: number, span = TRACE_SPAN_SECONDS): number[] {
  return samples.map((s) => Math.min(1, Math.max(0, (now - s[0]) / span)));
}
