/** The game's view state: one level being briefed, played, tuned, reviewed.
 *
 * Phases move briefing -> playing -> results, with an optional detour through
 * the FineTune editor and back to results on resubmission; a new attempt may
 * start from either briefing or results. The view never computes physics or
 * scores: densities arrive from the live-preview endpoint while playing and
 * from the replay endpoint afterwards, and the score shown is always the
 * service's own report. The feedback bar tracks the latest reported fidelity,
 * colored by the level's star thresholds.
 */

import { GameClient } from "./api.js";
import {
  DEFAULT_DRAG_SETTINGS,
  DragRecorder,
  Viewport,
  type DragSettings,
} from "./control.js";
import { feedbackColor, type BarColor } from "./feedback.js";
import {
  movePoint,
  resample,
  smooth,
  stretchTime,
} from "./finetune.js";
import { pathDuration, type ControlPath } from "./path.js";
import {
  densityMean,
  landscapeValues,
  polyline,
  valueRange,
  type Polyline,
} from "./render.js";
import type {
  ControlSample,
  LeaderboardEntry,
  LevelDetail,
  ReplayFrames,
  SubmitResult,
  UserProfile,
} from "./types.js";

export type Phase = "briefing" | "playing" | "finetune" | "results";

export interface RenderFrame {
  landscape: Polyline;
  density: Polyline;
  /** Pixel position of the density's mean, for the "ball" display mode. */
  ball: [number, number] | null;
}

export interface ViewOptions {
  settings?: Partial<DragSettings>;
  /** Wall-clock milliseconds between live-preview requests. */
  previewIntervalMs?: number;
  /** Entries requested around the player on leaderboard refreshes. */
  leaderboardWindow?: number;
}

export class GameView {
  readonly settings: DragSettings;
  readonly previewIntervalMs: number;
  readonly leaderboardWindow: number;

  phase: Phase = "briefing";
  pointerX0: number;
  pointerAmplitude: number;
  leaderboard: LeaderboardEntry[] = [];
  submit: SubmitResult | null = null;

  private recorder: DragRecorder | null = null;
  private frames: ReplayFrames | null = null;
  private frameIndex = 0;
  private fidelity = 0;
  private playedPath: ControlPath | null = null;
  private edited: ControlPath | null = null;
  private lastPreviewMs = -Infinity;
  private previewInFlight = false;
  private finishing = false;

  private constructor(
    private readonly client: GameClient,
    readonly profile: UserProfile,
    readonly level: LevelDetail,
    options: ViewOptions,
  ) {
    this.settings = { ...DEFAULT_DRAG_SETTINGS, ...options.settings };
    this.previewIntervalMs = options.previewIntervalMs ?? 500;
    this.leaderboardWindow = options.leaderboardWindow ?? 10;
    const start = this.startTrap();
    this.pointerX0 = start.x0;
    this.pointerAmplitude = start.amplitude;
  }

  static async open(
    client: GameClient,
    profile: UserProfile,
    levelId: string,
    options: ViewOptions = {},
  ): Promise<GameView> {
    const level = await client.level(levelId);
    return new GameView(client, profile, level, options);
  }

  private startTrap(): { x0: number; amplitude: number } {
    const trap = this.level.initial_trap;
    if (trap.kind === "tweezer") {
      return { x0: trap.x0, amplitude: trap.amplitude };
    }
    return { x0: this.level.static_wells[trap.index].center, amplitude: 0 };
  }

  /** The running fidelity shown on the feedback bar. */
  get barValue(): number {
    return this.fidelity;
  }

  get barColor(): BarColor {
    return feedbackColor(this.level.star_thresholds, this.fidelity);
  }

  /** Control samples recorded so far in this attempt. */
  get sampleCount(): number {
    return this.recorder?.sampleCount ?? 0;
  }

  /** The path being edited in the FineTune phase. */
  get editedPath(): ControlPath {
    if (this.edited === null) {
      throw new Error("not editing");
    }
    return this.edited;
  }

  /** Update the pointer in world coordinates (the canvas maps pixels). */
  pointer(x0: number, amplitude: number): void {
    this.pointerX0 = x0;
    this.pointerAmplitude = amplitude;
  }

  beginPlay(wallMs: number): void {
    if (this.phase !== "briefing" && this.phase !== "results") {
      throw new Error(`cannot start playing from phase ${this.phase}`);
    }
    this.recorder = new DragRecorder(
      this.level.tweezer,
      this.level.duration_max,
      this.settings.secondsPerUnitTime,
    );
    this.recorder.start(wallMs, this.pointerX0, this.pointerAmplitude);
    this.frames = null;
    this.frameIndex = 0;
    this.fidelity = 0;
    this.submit = null;
    this.lastPreviewMs = wallMs;
    this.finishing = false;
    this.phase = "playing";
  }

  /**
   * Advance one animation frame: record the pointer, keep the live preview
   * fresh, and close the play when the time budget runs out (or the preview
   * reports the atom lost). Call at display rate while playing.
   */
  async tick(wallMs: number): Promise<void> {
    if (this.phase !== "playing") {
      return;
    }
    const recorder = this.recorder!;
    recorder.sample(wallMs, this.pointerX0, this.pointerAmplitude);
    if (recorder.finished) {
      await this.finishPlay(wallMs);
      return;
    }
    if (wallMs - this.lastPreviewMs >= this.previewIntervalMs && !this.previewInFlight) {
      const prefix = recorder.prefixPath();
      if (prefix !== null) {
        this.lastPreviewMs = wallMs;
        this.previewInFlight = true;
        try {
          const preview = await this.client.preview(this.level.id, prefix);
          if (this.phase === "playing") {
            this.frames = preview.frames;
            this.frameIndex = preview.frames.t.length - 1;
            const trace = preview.report.feedback_trace;
            this.fidelity = trace[trace.length - 1];
            if (preview.report.died) {
              await this.finishPlay(wallMs);
            }
          }
        } finally {
          this.previewInFlight = false;
        }
      }
    }
  }

  /** Pointer released: submit whatever has been recorded. */
  async release(wallMs: number): Promise<void> {
    if (this.phase !== "playing") {
      throw new Error(`cannot release in phase ${this.phase}`);
    }
    await this.finishPlay(wallMs);
  }

  private async finishPlay(wallMs: number): Promise<void> {
    if (this.finishing) {
      return;
    }
    this.finishing = true;
    const recorder = this.recorder!;
    recorder.release(wallMs, this.pointerX0, this.pointerAmplitude);
    this.playedPath = recorder.path("human");
    await this.submitPath(this.playedPath);
  }

  private async submitPath(path: ControlPath): Promise<void> {
    const result = await this.client.submitPlay(this.profile.user_id, this.level.id, path);
    this.submit = result;
    this.fidelity = result.report.fidelity;
    const replay = await this.client.replay(result.play_id);
    this.frames = replay.frames;
    this.frameIndex = Math.max(0, replay.frames.t.length - 1);
    this.leaderboard = await this.client.leaderboard(this.level.id, {
      around: this.profile.user_id,
      window: this.leaderboardWindow,
    });
    this.phase = "results";
  }

  /** The end-screen score line, straight from the service's report. */
  scoreLine(): string {
    if (this.submit === null) {
      throw new Error("no play submitted yet");
    }
    const report = this.submit.report;
    if (report.died) {
      return "The atom was lost — 0 points";
    }
    const stars = "★".repeat(report.stars) + "☆".repeat(3 - report.stars);
    return `${report.total_score} points  ${stars}`;
  }

  enterFineTune(): void {
    if (this.phase !== "results") {
      throw new Error(`cannot tune from phase ${this.phase}`);
    }
    if (this.playedPath === null) {
      throw new Error("no path to tune");
    }
    this.edited = this.playedPath;
    this.phase = "finetune";
  }

  applySmooth(window = 5, locked: Iterable<number> = []): void {
    this.edited = smooth(this.editedPath, window, locked);
  }

  applyStretch(factor: number): void {
    this.edited = stretchTime(this.editedPath, factor);
  }

  applyMovePoint(index: number, sample: ControlSample): void {
    this.edited = movePoint(this.editedPath, index, sample, this.level.tweezer);
  }

  applyResample(rate: number): void {
    this.edited = resample(this.editedPath, rate);
  }

  resetEdits(): void {
    if (this.phase !== "finetune") {
      throw new Error(`not tuning (phase ${this.phase})`);
    }
    this.edited = this.playedPath;
  }

  /** Submit the tuned path as a new play with origin "edited". */
  async resubmit(): Promise<void> {
    if (this.phase !== "finetune") {
      throw new Error(`cannot resubmit from phase ${this.phase}`);
    }
    const path: ControlPath = { ...this.editedPath, origin: "edited" };
    if (pathDuration(path) > this.level.duration_max) {
      throw new Error(
        `edited path lasts ${pathDuration(path)}, level allows ${this.level.duration_max}`,
      );
    }
    this.playedPath = path;
    await this.submitPath(path);
  }

  /** Scrub the results replay to a specific frame. */
  showFrame(index: number): void {
    if (this.frames === null) {
      throw new Error("no frames to show");
    }
    if (!(index >= 0 && index < this.frames.t.length)) {
      throw new Error(`frame ${index} out of range for ${this.frames.t.length} frames`);
    }
    this.frameIndex = index;
  }

  /** Polylines for the canvas: potential landscape plus density (or ball). */
  renderFrame(viewport: Viewport): RenderFrame {
    const level = this.level;
    let density = level.initial_density;
    let tweezerX0 = this.pointerX0;
    let tweezerAmplitude = this.pointerAmplitude;
    if (this.frames !== null && this.frames.t.length > 0) {
      density = this.frames.density[this.frameIndex];
      if (this.phase !== "playing") {
        tweezerX0 = this.frames.x0[this.frameIndex];
        tweezerAmplitude = this.frames.amplitude[this.frameIndex];
      }
    }
    const landscape = landscapeValues(
      level.static_potential,
      level.x,
      tweezerX0,
      tweezerAmplitude,
      level.tweezer.sigma,
    );
    const potentialRange = valueRange([
      level.static_potential,
      landscapeValues(level.static_potential, level.x, 0, level.tweezer.depth_max, level.tweezer.sigma),
    ]);
    const densityRange = valueRange([density, level.target_density]);
    const ball: [number, number] | null =
      level.display_mode === "ball"
        ? [
            viewport.pixelX(densityMean(level.x, density)),
            viewport.height / 2,
          ]
        : null;
    return {
      landscape: polyline(level.x, landscape, viewport, potentialRange),
      density: polyline(level.x, density, viewport, densityRange),
      ball,
    };
  }
}
