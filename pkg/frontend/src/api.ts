/** Thin typed client for the /v1 game-service API.
 *
 * All calls are plain fetch + JSON. Non-2xx responses raise ApiError with the
 * decoded error payload so callers can show the service's own message.
 * Play submission de-duplicates in flight: a second submit for the same user
 * and level while one is pending returns the pending promise instead of
 * posting twice.
 */

import { pathPayload, type ControlPath } from "./path.js";
import type {
  EngagementMetrics,
  LeaderboardEntry,
  LevelDetail,
  LevelSummary,
  PreviewResponse,
  ReplayResponse,
  SubmitResult,
  UserProfile,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: Record<string, unknown>,
  ) {
    super(typeof payload.error === "string" ? payload.error : `HTTP ${status}`);
    this.name = "ApiError";
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class GameClient {
  private readonly pendingSubmits = new Map<string, Promise<SubmitResult>>();

  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: FetchLike = fetch,
  ) {}

  private async request<T>(method: "GET" | "POST", route: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${route}`, init);
    const payload = (await response.json()) as Record<string, unknown>;
    if (!response.ok) {
      throw new ApiError(response.status, payload);
    }
    return payload as T;
  }

  async health(): Promise<{ status: string }> {
    return this.request("GET", "/v1/health");
  }

  async listLevels(): Promise<LevelSummary[]> {
    const data = await this.request<{ levels: LevelSummary[] }>("GET", "/v1/levels");
    return data.levels;
  }

  async level(levelId: string): Promise<LevelDetail> {
    return this.request("GET", `/v1/levels/${levelId}`);
  }

  async registerUser(name: string, origin: string, rngSeed?: number): Promise<UserProfile> {
    const body: Record<string, unknown> = { name, origin };
    if (rngSeed !== undefined) {
      body.rng_seed = rngSeed;
    }
    return this.request("POST", "/v1/users", body);
  }

  async user(userId: string): Promise<UserProfile> {
    return this.request("GET", `/v1/users/${userId}`);
  }

  async submitPlay(
    userId: string,
    levelId: string,
    path: ControlPath,
    clientVersion?: string,
  ): Promise<SubmitResult> {
    const key = `${userId}:${levelId}`;
    const pending = this.pendingSubmits.get(key);
    if (pending !== undefined) {
      return pending;
    }
    const body: Record<string, unknown> = {
      user_id: userId,
      level_id: levelId,
      path: pathPayload(path),
    };
    if (clientVersion !== undefined) {
      body.client_version = clientVersion;
    }
    const submit = this.request<SubmitResult>("POST", "/v1/plays", body).finally(() => {
      this.pendingSubmits.delete(key);
    });
    this.pendingSubmits.set(key, submit);
    return submit;
  }

  async replay(playId: string): Promise<ReplayResponse> {
    return this.request("GET", `/v1/plays/${playId}/replay`);
  }

  async leaderboard(
    levelId: string,
    options: { around?: string; window?: number } = {},
  ): Promise<LeaderboardEntry[]> {
    const query = new URLSearchParams();
    if (options.around !== undefined) {
      query.set("around", options.around);
    }
    if (options.window !== undefined) {
      query.set("window", String(options.window));
    }
    const suffix = query.size > 0 ? `?${query.toString()}` : "";
    const data = await this.request<{ entries: LeaderboardEntry[] }>(
      "GET",
      `/v1/leaderboards/${levelId}${suffix}`,
    );
    return data.entries;
  }

  async metrics(): Promise<EngagementMetrics> {
    return this.request("GET", "/v1/metrics");
  }

  async preview(levelId: string, path: ControlPath): Promise<PreviewResponse> {
    return this.request("POST", "/v1/preview", {
      level_id: levelId,
      path: pathPayload(path),
    });
  }
}
