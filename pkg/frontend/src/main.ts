/** Browser entry point: wires the DOM to the game view.
 *
 * Everything interesting lives in the tested modules; this file is the thin
 * adapter from pointer events, canvas, and buttons onto GameView. The API
 * base defaults to the page's own origin and can be pointed elsewhere with
 * ?api=http://host:port for local development against `qmotion serve`.
 */

import { ApiError, GameClient } from "./api.js";
import { Viewport } from "./control.js";
import { LEADERBOARD_PLACEHOLDER, leaderboardRows, levelTiles } from "./panels.js";
import type { LevelSummary, UserProfile } from "./types.js";
import { GameView, type Phase } from "./view.js";

const BAR_COLORS = { red: "#c0392b", yellow: "#d4a017", green: "#1e8449" } as const;

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) {
    throw new Error(`missing #${id} in page`);
  }
  return found as T;
}

class App {
  private readonly canvas = element<HTMLCanvasElement>("playfield");
  private readonly context = this.canvas.getContext("2d")!;
  private readonly tilesBox = element<HTMLDivElement>("tiles");
  private readonly boardBox = element<HTMLDivElement>("leaderboard");
  private readonly statusBox = element<HTMLDivElement>("status");
  private readonly barBox = element<HTMLDivElement>("bar");
  private readonly tuneBox = element<HTMLDivElement>("finetune");

  private levels: LevelSummary[] = [];
  private profile: UserProfile | null = null;
  private view: GameView | null = null;
  private viewport: Viewport | null = null;
  private readonly prerequisites = new Map<string, readonly string[]>();

  constructor(private readonly client: GameClient) {}

  async start(): Promise<void> {
    this.levels = await this.client.listLevels();
    const name = window.prompt("Player name?") ?? `guest-${Date.now()}`;
    const origin = window.prompt("How did you find the game?") ?? "unknown";
    try {
      this.profile = await this.client.registerUser(name, origin);
    } catch (err) {
      this.status(err instanceof ApiError ? err.message : String(err));
      return;
    }
    this.renderTiles();
    this.status("Pick a level.");
    this.canvas.addEventListener("pointerdown", (e) => this.onPointerDown(e));
    this.canvas.addEventListener("pointermove", (e) => this.onPointerMove(e));
    this.canvas.addEventListener("pointerup", (e) => void this.onPointerUp(e));
    requestAnimationFrame((ms) => void this.frame(ms));
  }

  private status(text: string): void {
    this.statusBox.textContent = text;
  }

  private renderTiles(): void {
    this.tilesBox.replaceChildren();
    for (const tile of levelTiles(this.levels, this.profile!, this.prerequisites)) {
      const button = document.createElement("button");
      button.textContent = tile.title;
      button.title = tile.tooltip;
      button.disabled = tile.locked;
      button.className = tile.locked ? "tile locked" : "tile";
      button.addEventListener("click", () => void this.openLevel(tile.id));
      this.tilesBox.append(button);
    }
  }

  private async openLevel(levelId: string): Promise<void> {
    try {
      this.view = await GameView.open(this.client, this.profile!, levelId);
    } catch (err) {
      this.status(err instanceof ApiError ? err.message : String(err));
      return;
    }
    this.viewport = new Viewport(
      this.canvas.width,
      this.canvas.height,
      this.view.level.x[0],
      this.view.level.x[this.view.level.x.length - 1],
    );
    this.tuneBox.replaceChildren();
    this.status(`${this.view.level.title} — press and hold to steer the tweezer.`);
    this.renderBoard();
  }

  private pointerWorld(event: PointerEvent): { x0: number; amplitude: number } {
    const rect = this.canvas.getBoundingClientRect();
    const px = ((event.clientX - rect.left) / rect.width) * this.canvas.width;
    const py = ((event.clientY - rect.top) / rect.height) * this.canvas.height;
    const viewport = this.viewport!;
    const view = this.view!;
    return {
      x0: viewport.worldX(px),
      amplitude: viewport.amplitude(
        py,
        view.level.tweezer.depth_max,
        view.settings.depthGain,
      ),
    };
  }

  private onPointerDown(event: PointerEvent): void {
    const view = this.view;
    if (view === null || (view.phase !== "briefing" && view.phase !== "results")) {
      return;
    }
    this.canvas.setPointerCapture(event.pointerId);
    const world = this.pointerWorld(event);
    view.pointer(world.x0, world.amplitude);
    view.beginPlay(performance.now());
    this.status("Playing…");
  }

  private onPointerMove(event: PointerEvent): void {
    const view = this.view;
    if (view === null || view.phase !== "playing") {
      return;
    }
    const world = this.pointerWorld(event);
    view.pointer(world.x0, world.amplitude);
  }

  private async onPointerUp(event: PointerEvent): Promise<void> {
    const view = this.view;
    if (view === null || view.phase !== "playing") {
      return;
    }
    const world = this.pointerWorld(event);
    view.pointer(world.x0, world.amplitude);
    try {
      await view.release(performance.now());
    } catch (err) {
      this.handlePlayError(err);
      return;
    }
    this.showResults();
  }

  private handlePlayError(err: unknown): void {
    if (err instanceof ApiError && err.status === 403) {
      const levelId = String(err.payload.level_id ?? "");
      const missing = err.payload.missing;
      if (levelId && Array.isArray(missing)) {
        this.prerequisites.set(levelId, missing.map(String));
        this.renderTiles();
      }
    }
    this.status(err instanceof ApiError ? err.message : String(err));
  }

  private showResults(): void {
    const view = this.view!;
    this.status(view.scoreLine());
    this.renderBoard();
    this.tuneBox.replaceChildren();
    const tune = document.createElement("button");
    tune.textContent = "FineTune";
    tune.addEventListener("click", () => {
      view.enterFineTune();
      this.renderTuner();
    });
    this.tuneBox.append(tune);
  }

  private renderTuner(): void {
    const view = this.view!;
    this.tuneBox.replaceChildren();
    const smoothButton = document.createElement("button");
    smoothButton.textContent = "Smooth";
    smoothButton.addEventListener("click", () => view.applySmooth());
    const stretchInput = document.createElement("input");
    stretchInput.type = "number";
    stretchInput.step = "0.1";
    stretchInput.value = "1.0";
    const stretchButton = document.createElement("button");
    stretchButton.textContent = "Stretch";
    stretchButton.addEventListener("click", () =>
      view.applyStretch(Number(stretchInput.value)),
    );
    const resetButton = document.createElement("button");
    resetButton.textContent = "Reset";
    resetButton.addEventListener("click", () => view.resetEdits());
    const sendButton = document.createElement("button");
    sendButton.textContent = "Resubmit";
    sendButton.addEventListener("click", () => {
      view.resubmit().then(
        () => this.showResults(),
        (err) => this.handlePlayError(err),
      );
    });
    this.tuneBox.append(smoothButton, stretchInput, stretchButton, resetButton, sendButton);
  }

  private renderBoard(): void {
    const view = this.view;
    this.boardBox.replaceChildren();
    if (view === null) {
      return;
    }
    const rows = leaderboardRows(view.leaderboard, this.profile!.user_id);
    if (rows.length === 0) {
      this.boardBox.textContent = LEADERBOARD_PLACEHOLDER;
      return;
    }
    for (const row of rows) {
      const line = document.createElement("div");
      line.textContent = `#${row.rank}  ${row.userId}  ${row.bestScore}`;
      if (row.isSelf) {
        line.className = "self";
      }
      this.boardBox.append(line);
    }
  }

  private drawBar(): void {
    const view = this.view;
    if (view === null) {
      this.barBox.style.background = "transparent";
      return;
    }
    const color = BAR_COLORS[view.barColor];
    const percent = Math.round(view.barValue * 100);
    this.barBox.style.background = `linear-gradient(to top, ${color} ${percent}%, #2b2b2b ${percent}%)`;
  }

  private draw(): void {
    const view = this.view;
    const viewport = this.viewport;
    const ctx = this.context;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (view === null || viewport === null) {
      return;
    }
    for (const zone of view.level.death_zones) {
      const left = viewport.pixelX(zone.x_lo);
      ctx.fillStyle = "rgba(192, 57, 43, 0.25)";
      ctx.fillRect(left, 0, viewport.pixelX(zone.x_hi) - left, this.canvas.height);
    }
    const frame = view.renderFrame(viewport);
    ctx.strokeStyle = "#111";
    ctx.lineWidth = 2;
    ctx.beginPath();
    frame.landscape.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
    ctx.stroke();
    if (frame.ball !== null) {
      ctx.fillStyle = "#1e8449";
      ctx.beginPath();
      ctx.arc(frame.ball[0], frame.ball[1], 8, 0, 2 * Math.PI);
      ctx.fill();
    } else {
      ctx.strokeStyle = "#1e8449";
      ctx.beginPath();
      frame.density.forEach(([x, y], i) => (i === 0 ? ctx.moveTo(x, y) : ctx.lineTo(x, y)));
      ctx.stroke();
    }
    this.drawBar();
  }

  private async frame(nowMs: number): Promise<void> {
    const view = this.view;
    if (view !== null && view.phase === "playing") {
      try {
        // tick() submits the play when the time budget runs out.
        await view.tick(nowMs);
        if ((view.phase as Phase) === "results") {
          this.showResults();
        }
      } catch (err) {
        this.handlePlayError(err);
      }
    }
    this.draw();
    requestAnimationFrame((ms) => void this.frame(ms));
  }
}

const api = new URLSearchParams(window.location.search).get("api") ?? "";
void new App(new GameClient(api)).start();
