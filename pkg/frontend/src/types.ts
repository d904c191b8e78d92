/** Payload shapes of the /v1 game-service API, field for field. */

export interface ControlSample {
  /** Game time of the knot; the first sample of a path sits at t = 0. */
  t: number;
  /** Tweezer center position. */
  x0: number;
  /** Tweezer depth (attractive well amplitude), >= 0. */
  amplitude: number;
}

export type PathOrigin =
  | "human"
  | "local_opt"
  | "stochastic_opt"
  | "hybrid"
  | "reference"
  | "edited";

export interface PathPayload {
  t: number[];
  x0: number[];
  amplitude: number[];
  origin: PathOrigin;
}

export interface ScoreReport {
  fidelity: number;
  time_used: number;
  time_penalty_fraction: number;
  bonus_points: number;
  total_score: number;
  stars: number;
  died: boolean;
  death_time: number | null;
  death_zone: number | null;
  feedback_trace: number[];
}

export interface Badge {
  badge_id: string;
  title: string;
  kind: "performance" | "engagement";
  criterion: string;
  awarded_at: number;
}

export interface ExperimentCell {
  levels_mode: "open" | "locked";
  badges_mode: "on" | "off";
}

export interface UserProfile {
  user_id: string;
  name: string;
  registered_at: number;
  recruitment_origin: string;
  experiment_cell: ExperimentCell;
  badges: Badge[];
  unlocked: string[];
}

export interface SubmitResult {
  play_id: string;
  report: ScoreReport;
  personal_best: boolean;
  new_unlocks: string[];
  new_badges: Badge[];
}

export interface LevelSummary {
  id: string;
  title: string;
  duration_max: number;
  skill_tags: string[];
  star_thresholds: [number, number, number];
  max_points: number;
  display_mode: "ball" | "wave";
}

export interface TweezerSpecPayload {
  sigma: number;
  depth_max: number;
  x_min: number;
  x_max: number;
}

export interface StaticWellPayload {
  center: number;
  depth: number;
  width: number;
}

export type TrapPayload =
  | { kind: "well"; index: number }
  | { kind: "tweezer"; x0: number; amplitude: number };

export interface DeathZonePayload {
  x_lo: number;
  x_hi: number;
}

export interface BonusPickupPayload {
  x: number;
  radius: number;
  points: number;
}

export interface LevelDetail extends LevelSummary {
  tweezer: TweezerSpecPayload;
  static_wells: StaticWellPayload[];
  initial_trap: TrapPayload;
  target_trap: TrapPayload;
  death_zones: DeathZonePayload[];
  bonus_pickups: BonusPickupPayload[];
  time_penalty_weight: number;
  /** Spatial grid the arrays below are sampled on. */
  x: number[];
  static_potential: number[];
  initial_density: number[];
  target_density: number[];
}

export interface ReplayFrames {
  t: number[];
  /** One density array per entry of t, each sampled on the level's x grid. */
  density: number[][];
  /** Tweezer center at each frame time. */
  x0: number[];
  /** Tweezer depth at each frame time. */
  amplitude: number[];
  /** True when the evolution ended early (the atom left the playfield). */
  truncated: boolean;
}

export interface PreviewResponse {
  level_id: string;
  report: ScoreReport;
  frames: ReplayFrames;
}

export interface ReplayResponse {
  play_id: string;
  level_id: string;
  user_id: string;
  timestamp: number;
  client_version: string;
  path: PathPayload;
  report: ScoreReport;
  frames: ReplayFrames;
}

export interface LeaderboardEntry {
  level_id: string;
  user_id: string;
  best_score: number;
  play_count: number;
  rank: number;
}

export interface EngagementMetrics {
  registered_users: number;
  total_plays: number;
  tried_ratio: Record<string, number>;
  completed_ratio: Record<string, number>;
  tutorial_completion_rate: number;
  active_days: Record<string, number>;
  plays_per_active_day: Record<string, number>;
  retention_curve: number[];
}
