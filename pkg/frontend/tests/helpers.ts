import type { Draw2D } from "../src/charts/context.js";
import type { VideoSurface } from "../src/playback.js";
import type {
  SessionSummary,
  TimelineEvent,
  TimelineSlice,
  TrackSample,
  WindowRow,
} from "../src/types.js";

/**
 * Draw2D stub that records every operation and rejects non-finite
 * coordinates, so a NaN leaking into chart code fails the test that drew it.
 */
export class RecordingContext implements Draw2D {
  fillStyle = "#000000";
  strokeStyle = "#000000";
  lineWidth = 1;
  font = "";
  textAlign = "left";
  textBaseline = "alphabetic";
  globalAlpha = 1;

  ops: { op: string; args: (number | string | boolean | number[])[] }[] = [];
  usedStyles: string[] = [];

  private record(op: string, ...args: (number | string | boolean | number[])[]): void {
    for (const arg of args) {
      if (typeof arg === "number" && !Number.isFinite(arg)) {
        throw new Error(`${op} received non-finite argument`);
      }
    }
    this.ops.push({ op, args });
  }

  count(op: string): number {
    return this.ops.filter((o) => o.op === op).length;
  }

  texts(): string[] {
    return this.ops.filter((o) => o.op === "fillText").map((o) => String(o.args[0]));
  }

  save(): void { this.record("save"); }
  restore(): void { this.record("restore"); }
  beginPath(): void { this.record("beginPath"); }
  closePath(): void { this.record("closePath"); }
  moveTo(x: number, y: number): void { this.record("moveTo", x, y); }
  lineTo(x: number, y: number): void { this.record("lineTo", x, y); }
  arc(x: number, y: number, r: number, a0: number, a1: number, ccw?: boolean): void {
    this.record("arc", x, y, r, a0, a1, ccw ?? false);
  }
  rect(x: number, y: number, w: number, h: number): void { this.record("rect", x, y, w, h); }
  fill(): void { this.usedStyles.push(this.fillStyle); this.record("fill"); }
  stroke(): void { this.usedStyles.push(this.strokeStyle); this.record("stroke"); }
  fillRect(x: number, y: number, w: number, h: number): void {
    this.usedStyles.push(this.fillStyle);
    this.record("fillRect", x, y, w, h);
  }
  clearRect(x: number, y: number, w: number, h: number): void { this.record("clearRect", x, y, w, h); }
  fillText(text: string, x: number, y: number): void { this.record("fillText", text, x, y); }
  setLineDash(segments: number[]): void { this.record("setLineDash", segments); }
}

/** Minimal stand-in for an HTMLVideoElement clock. */
export class FakeVideo implements VideoSurface {
  currentTime = 0;
  paused = true;
  playbackRate = 1;

  constructor(readonly duration = 600) {}

  play(): void { this.paused = false; }
  pause(): void { this.paused = true; }

  /** Advance wall time; media time accrues only while playing. */
  advance(dtSeconds: number): void {
    if (this.paused) return;
    this.currentTime = Math.min(this.duration, this.currentTime + dtSeconds * this.playbackRate);
  }
}

export interface FakeServiceData {
  track: TrackSample[];
  events: TimelineEvent[];
  windows: WindowRow[];
}

export function windowRow(start: number, end: number, speechFraction = 0.5): WindowRow {
  return {
    start,
    end,
    level: "fine",
    partial: false,
    speech_fraction: speechFraction,
    utterance_count: 3,
    mean_utterance_seconds: 0.5,
    mean_pause_seconds: 1.0,
    loudness_mean_db: -22,
    loudness_std_db: 3,
    pitch_mean_semitones: 12,
    pitch_std_semitones: 2,
    intonation_score: 1.0,
    jitter_pct: 0.8,
    shimmer_pct: 3.2,
    cpp_db: 14,
    f1_hz: 500,
    f2_hz: 1500,
    speaking_rate_wpm: 130,
    voicing_prob_mean: 0.4,
  };
}

export function makeServiceData(duration: number): FakeServiceData {
  const track: TrackSample[] = [];
  for (let t = 0; t <= duration + 1e-9; t += 0.5) {
    const tt = Math.round(t * 2) / 2;
    track.push([tt, 0.1 + 0.8 * ((tt / duration) % 1), 0.3 + 0.1 * Math.sin(tt)]);
  }
  const events: TimelineEvent[] = [];
  for (let start = 5; start + 20 <= duration; start += 45) {
    events.push({ kind: "lecturing", start, end: start + 20, confidence: 1.0, source: "manual" });
    events.push({ kind: "writing_on_board", start: start + 22, end: start + 30, confidence: 0.8, source: "detector" });
  }
  const windows: WindowRow[] = [];
  for (let start = 0; start < duration; start += 10) {
    windows.push(windowRow(start, Math.min(start + 10, duration), (start / duration) * 0.9));
  }
  return { track, events, windows };
}

/**
 * Serves slices with exactly the service's filter semantics: half-open
 * windows, closed track range, overlap events.
 */
export class FakeTimelineSource {
  calls: [number, number][] = [];
  failFor: (from: number, to: number) => boolean = () => false;

  constructor(
    private readonly data: FakeServiceData,
    private readonly sessionId = "s",
  ) {}

  timeline(sessionId: string, from: number, to: number): Promise<TimelineSlice> {
    this.calls.push([from, to]);
    if (this.failFor(from, to)) {
      return Promise.reject(new Error("fetch failed"));
    }
    return Promise.resolve(sliceOf(this.data, sessionId, from, to));
  }
}

export function sliceOf(data: FakeServiceData, sessionId: string, from: number, to: number): TimelineSlice {
  return {
    session_id: sessionId,
    from_time: from,
    to_time: to,
    windows: data.windows.filter((w) => w.start < to && w.end > from),
    track: data.track.filter((s) => from <= s[0] && s[0] <= to),
    events: data.events.filter((e) => e.start <= to && e.end >= from),
  };
}

export function makeSummary(overrides: Partial<SessionSummary> = {}): SessionSummary {
  const base: SessionSummary = {
    session_id: "demo",
    duration: 900,
    media_available: true,
    action_proportions: {
      outer: {
        writing_on_board: 1 / 6,
        lecturing: 0.5,
        "group work": 1 / 6,
        none: 1 / 6,
      },
      inner: {
        writing_on_board: { board: 1 / 6 },
        lecturing: { board: 0.25, students: 0.25 },
        "group work": { students: 1 / 6 },
      },
    },
    zone_occupancy: { board: 0.6, students: 0.4 },
    teaching_style: { available: true, active_fraction: 0.7, passive_fraction: 0.3 },
    speaking_style: {
      metrics: {
        speech_fraction: 0.42,
        speaking_rate_wpm: 140,
        clarity: 0.8,
        monotony: 1.1,
        loudness_std_db: 3.1,
        jitter_pct: 0.9,
        shimmer_pct: 3.3,
        cpp_db: 14.2,
      },
      score: {
        ew_score: 71.0,
        rw_score: 68.5,
        feature_scores: { speaking_rate: 80, clarity: 90 },
        weights: { speaking_rate: 0.5, clarity: 0.5 },
      },
      verdicts: {
        speaking_rate: { value: 140, verdict: "within", distance_to_target: 0.0 },
        clarity: { value: 0.8, verdict: "optimal" },
        monotony: { value: 1.1, verdict: "average" },
      },
    },
    speak_pause_ratio: { speech_seconds: 2400, pause_seconds: 1200, ratio: 2.0, infinite: false },
    heatmap: {
      rows: 3,
      cols: 4,
      counts: [
        [0, 1, 2, 0],
        [3, 8, 1, 0],
        [0, 2, 0, 0],
      ],
      total: 17,
    },
    xy_series: [
      { t: 0, x: 0.2, y: 0.3 },
      { t: 450, x: 0.6, y: 0.35 },
      { t: 900, x: 0.8, y: 0.4 },
    ],
    track: { track_id: 0, samples: [[0, 0.2, 0.3]], gaps: [] },
    windows: { coarse: [], fine: [] },
    provenance: { tool: "teachtrace", version: "0.1.0", config: {} },
  };
  return { ...base, ...overrides };
}
