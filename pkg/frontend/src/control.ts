/** Mouse-drag capture: pixels to tweezer control samples.
 *
 * Horizontal pointer position maps to the tweezer center x0, vertical to its
 * depth (moving the pointer up deepens the well; the gain is a client setting
 * since taste differs). Samples are clamped to the level's tweezer bounds so
 * a recorded play always validates, and timestamps are strictly increasing:
 * the recorder drops stale events rather than emit a non-monotone path.
 *
 * The caller is expected to sample on every animation frame, not only on
 * pointer moves — that is what guarantees the >= 30 samples/s capture rate
 * and makes "no mouse movement" a perfectly valid (recorded) play.
 */

import { makePath, type ControlPath } from "./path.js";
import type { ControlSample, PathOrigin, TweezerSpecPayload } from "./types.js";

export interface DragSettings {
  /** Wall-clock seconds per unit of game time. */
  secondsPerUnitTime: number;
  /** Multiplier on the pointer-height-to-depth mapping. */
  depthGain: number;
}

export const DEFAULT_DRAG_SETTINGS: DragSettings = {
  secondsPerUnitTime: 4,
  depthGain: 1,
};

/** The capture rate the play loop must sustain. */
export const MIN_SAMPLES_PER_SECOND = 30;

function clamp(value: number, lo: number, hi: number): number {
  return Math.min(hi, Math.max(lo, value));
}

/** Maps canvas pixels to world coordinates for one level's playfield. */
export class Viewport {
  constructor(
    readonly width: number,
    readonly height: number,
    readonly xLo: number,
    readonly xHi: number,
  ) {
    if (!(width > 0) || !(height > 0)) {
      throw new Error(`viewport needs positive size, got ${width}x${height}`);
    }
    if (!(xHi > xLo)) {
      throw new Error(`viewport needs xHi > xLo, got [${xLo}, ${xHi}]`);
    }
  }

  worldX(px: number): number {
    return this.xLo + (px / this.width) * (this.xHi - this.xLo);
  }

  pixelX(x: number): number {
    return ((x - this.xLo) / (this.xHi - this.xLo)) * this.width;
  }

  /** Pointer height to tweezer depth: top of the canvas is the deepest. */
  amplitude(py: number, depthMax: number, depthGain: number): number {
    return clamp((1 - py / this.height) * depthMax * depthGain, 0, depthMax);
  }
}

export class DragRecorder {
  private readonly samples: ControlSample[] = [];
  private startMs: number | null = null;
  private lastMs = 0;
  private done = false;

  constructor(
    readonly spec: TweezerSpecPayload,
    readonly durationMax: number,
    readonly secondsPerUnitTime: number,
  ) {
    if (!(durationMax > 0)) {
      throw new Error(`durationMax must be positive, got ${durationMax}`);
    }
    if (!(secondsPerUnitTime > 0)) {
      throw new Error(`secondsPerUnitTime must be positive, got ${secondsPerUnitTime}`);
    }
  }

  get started(): boolean {
    return this.startMs !== null;
  }

  get finished(): boolean {
    return this.done;
  }

  get sampleCount(): number {
    return this.samples.length;
  }

  /** Game time of the last recorded sample. */
  get lastT(): number {
    return this.samples.length > 0 ? this.samples[this.samples.length - 1].t : 0;
  }

  /** Recorded samples per wall-clock second so far. */
  sampleRate(): number {
    const elapsed = (this.lastMs - (this.startMs ?? 0)) / 1000;
    return elapsed > 0 ? this.samples.length / elapsed : 0;
  }

  private clampedSample(t: number, x0: number, amplitude: number): ControlSample {
    return {
      t,
      x0: clamp(x0, this.spec.x_min, this.spec.x_max),
      amplitude: clamp(amplitude, 0, this.spec.depth_max),
    };
  }

  start(wallMs: number, x0: number, amplitude: number): void {
    if (this.started) {
      throw new Error("drag already started");
    }
    this.startMs = wallMs;
    this.lastMs = wallMs;
    this.samples.push(this.clampedSample(0, x0, amplitude));
  }

  /**
   * Record the pointer state at wallMs. Returns false when the event was
   * dropped (stale timestamp or the play already ended). Reaching the
   * level's time budget records one final sample exactly at the budget and
   * finishes the play.
   */
  sample(wallMs: number, x0: number, amplitude: number): boolean {
    if (this.startMs === null) {
      throw new Error("drag not started");
    }
    if (this.done) {
      return false;
    }
    let t = (wallMs - this.startMs) / 1000 / this.secondsPerUnitTime;
    if (t >= this.durationMax) {
      t = this.durationMax;
      this.done = true;
    }
    if (t <= this.lastT) {
      return false;
    }
    this.lastMs = Math.max(this.lastMs, wallMs);
    this.samples.push(this.clampedSample(t, x0, amplitude));
    return true;
  }

  /** Pointer released: record the final state and close the play. */
  release(wallMs: number, x0: number, amplitude: number): void {
    if (this.startMs === null) {
      throw new Error("drag not started");
    }
    if (!this.done) {
      this.sample(wallMs, x0, amplitude);
      this.done = true;
    }
    if (this.samples.length < 2) {
      // A same-instant click still has to produce a playable path: hold the
      // pointer state for one capture frame.
      const t = Math.min(this.durationMax, 1 / MIN_SAMPLES_PER_SECOND / this.secondsPerUnitTime);
      this.samples.push(this.clampedSample(t, x0, amplitude));
    }
  }

  path(origin: PathOrigin = "human"): ControlPath {
    if (!this.done) {
      throw new Error("play still running");
    }
    return makePath(this.samples, origin);
  }

  /** The play so far, for live previews; null until there are two samples. */
  prefixPath(origin: PathOrigin = "human"): ControlPath | null {
    if (this.samples.length < 2) {
      return null;
    }
    return makePath(this.samples, origin);
  }
}
