/**
 * Document shapes served by the session review service. The dashboard never
 * recomputes analytics; everything rendered comes straight from these payloads.
 */

export interface SessionInfo {
  session_id: string;
  duration: number;
  analyzed: boolean;
  analyzed_at: number | null;
  media_available: boolean;
}

export interface TimelineEvent {
  kind: string;
  start: number;
  end: number;
  confidence: number;
  source: string;
}

/** One analysis window row; metric fields are null where the window had no usable signal. */
export interface WindowRow {
  start: number;
  end: number;
  level: "coarse" | "fine";
  partial: boolean;
  speech_fraction: number;
  utterance_count: number;
  mean_utterance_seconds: number | null;
  mean_pause_seconds: number | null;
  loudness_mean_db: number | null;
  loudness_std_db: number | null;
  pitch_mean_semitones: number | null;
  pitch_std_semitones: number | null;
  intonation_score: number | null;
  jitter_pct: number | null;
  shimmer_pct: number | null;
  cpp_db: number | null;
  f1_hz: number | null;
  f2_hz: number | null;
  speaking_rate_wpm: number | null;
  voicing_prob_mean: number | null;
}

/** Track sample as served: [time, x, y] in unit floor coordinates. */
export type TrackSample = [number, number, number];

export interface TimelineSlice {
  session_id: string;
  from_time: number;
  to_time: number;
  windows: WindowRow[];
  track: TrackSample[];
  events: TimelineEvent[];
}

export interface StyleNorms {
  rate_target_wpm: number;
  rate_band_wpm: [number, number];
  clarity_optimal: number;
  clarity_acceptable: number;
  monotony_low: number;
  monotony_high: number;
}

export interface VerdictEntry {
  value: number | null;
  verdict: string;
  distance_to_target?: number | null;
}

export interface SpeakingStyle {
  metrics: Record<string, number | null>;
  score: {
    ew_score: number | null;
    rw_score: number | null;
    feature_scores: Record<string, number>;
    weights: Record<string, number>;
  } | null;
  verdicts: Record<string, VerdictEntry>;
}

export interface SessionSummary {
  session_id: string;
  duration: number;
  media_available: boolean;
  action_proportions: {
    outer: Record<string, number>;
    inner: Record<string, Record<string, number>>;
  };
  zone_occupancy: Record<string, number | null>;
  teaching_style: {
    available: boolean;
    active_fraction: number | null;
    passive_fraction: number | null;
  };
  speaking_style: SpeakingStyle;
  speak_pause_ratio: {
    speech_seconds: number;
    pause_seconds: number;
    ratio: number | null;
    infinite: boolean;
  };
  heatmap: { rows: number; cols: number; counts: number[][]; total: number };
  xy_series: { t: number; x: number; y: number }[];
  track: { track_id: number | null; samples: TrackSample[]; gaps: [number, number][] };
  windows: { coarse: WindowRow[]; fine: WindowRow[] };
  provenance: { tool: string; version: string; config: { norms?: Partial<StyleNorms> } & Record<string, unknown> };
}

export type PlaybackMode = "normal" | "fullscreen" | "pip";

export interface PlaybackState {
  currentTime: number;
  speed: number;
  mode: PlaybackMode;
}
