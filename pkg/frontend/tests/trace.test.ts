import { describe, expect, it } from "vitest";

import { TRACE_SPAN_SECONDS, traceAges, traceWindow } from "../src/trace.js";
import type { TrackSample } from "../src/types.js";

function grid(from: number, to: number, dt = 0.5): TrackSample[] {
  const out: TrackSample[] = [];
  for (let t = from; t <= to + 1e-9; t += dt) {
    out.push([Math.round(t * 2) / 2, 0.5, 0.5]);
  }
  return out;
}

describe("traceWindow", () => {
  it("keeps the half-open (t-60, t] window", () => {
    const samples = grid(0, 200);
    const visible = traceWindow(samples, 95);
    const times = visible.map((s) => s[0]);
    expect(Math.min(...times)).toBe(35.5);
    expect(Math.max(...times)).toBe(95);
    expect(times).not.toContain(35);
    expect(times.length).toBe(120);
  });

  it("keeps early samples when the window reaches past the start", () => {
    // at t=30 the window is (-30, 30], so everything from 0 on is visible
    const samples = grid(0, 200);
    const times = traceWindow(samples, 30).map((s) => s[0]);
    expect(times[0]).toBe(0);
    expect(times[times.length - 1]).toBe(30);
    expect(times.length).toBe(61);
    expect(times).not.toContain(30.5);
  });

  it("honours a custom span", () => {
    const samples = grid(0, 100);
    const times = traceWindow(samples, 50, 10).map((s) => s[0]);
    expect(times[0]).toBe(40.5);
    expect(times[times.length - 1]).toBe(50);
  });

  it("returns nothing for an empty feed", () => {
    expect(traceWindow([], 30)).toEqual([]);
  });

  it("matches a brute filter on irregular samples", () => {
    const samples: TrackSample[] = [];
    let seed = 12345;
    const rand = () => {
      // park-miller, keeps the fixture deterministic
      seed = (seed * 48271) % 2147483647;
      return seed / 2147483647;
    };
    let t = 0;
    while (t < 500) {
      t += rand() * 2;
      samples.push([t, rand(), rand()]);
    }
    for (const now of [12.5, 61, 183.2, 499]) {
      const expected = samples.filter((s) => s[0] > now - TRACE_SPAN_SECONDS && s[0] <= now);
      expect(traceWindow(samples, now)).toEqual(expected);
    }
  });
});

describe("traceAges", () => {
  it("grades from 0 at the head to 1 at the tail", () => {
    const samples: TrackSample[] = [
      [40, 0.1, 0.1],
      [70, 0.2, 0.2],
      [100, 0.3, 0.3],
    ];
    const ages = traceAges(samples, 100, 60);
    expect(ages[0]).toBeCloseTo(1, 9);
    expect(ages[1]).toBeCloseTo(0.5, 9);
    expect(ages[2]).toBe(0);
  });
});
