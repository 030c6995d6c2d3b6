import type { PlaybackMode, PlaybackState, TimelineEvent } from "./types.js";
import { clamp } from "./format.js";

export const SPEED_MIN = 1.0;
export const SPEED_MAX = 3.0;
export const SPEED_DETENTS = [1.0, 1.5, 2.0, 3.0];

/** Seconds of lead-in shown before a clicked event. */
export const EVENT_PREROLL_SECONDS = 2.0;

/**
 * Clamp a requested speed into [1,3] and snap it onto the nearest detent when
 * within `snap`. The control is continuous between detents.
 */
export function snapSpeed(requested: number, snap = 0.08): number {
  const value = clamp(requested, SPEED_MIN, SPEED_MAX);
  for (const detent of SPEED_DETENTS) {
    if (Math.abs(value - detent) <= snap) return detent;
  }
  return value;
}

/** What the controller needs from a video element; tests substitute a stub. */
export interface VideoSurface {
  currentTime: number;
  paused: boolean;
  playbackRate: number;
  readonly duration: number;
  play(): void | Promise<void>;
  pause(): void;
}

/** Fullscreen/PIP side effects, injected so the controller stays testable. */
export interface ModeAdapter {
  enter(mode: PlaybackMode): void | Promise<void>;
  exit(mode: PlaybackMode): void | Promise<void>;
}

const NOOP_MODES: ModeAdapter = { enter: () => undefined, exit: () => undefined };

/**
 * Owns the playback state for the review screen: speed, display mode, and
 * event-driven seeking. Time itself always lives in the video element; the
 * controller never keeps a second clock.
 */
export class PlaybackController {
  private mode: PlaybackMode = "normal";
  private speed = 1.0;

  constructor(
    private readonly video: VideoSurface,
    private readonly modes: ModeAdapter = NOOP_MODES,
  ) {
    this.video.playbackRate = this.speed;
  }

  state(): PlaybackState {
    const duration = Number.isFinite(this.video.duration) ? this.video.duration : Infinity;
    return {
      currentTime: clamp(this.video.currentTime, 0, duration),
      speed: this.speed,
      mode: this.mode,
    };
  }

  setSpeed(requested: number): number {
    this.speed = snapSpeed(requested);
    this.video.playbackRate = this.speed;
    return this.speed;
  }

  async setMode(next: PlaybackMode): Promise<void> {
    if (next === this.mode) return;
    const previous = this.mode;
    this.mode = next;
    if (previous !== "normal") await this.modes.exit(previous);
    if (next !== "normal") await this.modes.enter(next);
  }

  /** External mode change (user pressed Esc, browser closed PIP). */
  noteModeExited(exited: PlaybackMode): void {
    if (this.mode === exited) this.mode = "normal";
  }

  togglePlay(): void {
    if (this.video.paused) {
      void this.video.play();
    } else {
      this.video.pause();
    }
  }

  /**
   * Jump to an event with a 2 s lead-in, clamped at the session start.
   * Whatever play/pause state was active before the click survives the seek.
   */
  seekToEvent(event: Pick<TimelineEvent, "start">): number {
    const wasPaused = this.video.paused;
    const duration = Number.isFinite(this.video.duration) ? this.video.duration : Infinity;
    const target = clamp(event.start - EVENT_PREROLL_SECONDS, 0, duration);
    this.video.currentTime = target;
    if (wasPaused) {
      this.video.pause();
    } else {
      void this.video.play();
    }
    return target;
  }

  seekTo(time: number): void {
    const duration = Number.isFinite(this.video.duration) ? this.video.duration : Infinity;
    this.video.currentTime = clamp(time, 0, duration);
  }
}
