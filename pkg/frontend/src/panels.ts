/** Side-panel view models: the level grid and the leaderboard window.
 *
 * Pure data-to-data mapping so the canvas code stays a thin painter. Which
 * levels are locked comes straight from the profile's unlocked list (in the
 * open condition the service unlocks everything up front, so nothing greys
 * out). Exact prerequisites are only revealed when the service refuses a
 * play, so tile tooltips start generic and sharpen after a 403.
 */

import type { LeaderboardEntry, LevelSummary, UserProfile } from "./types.js";

export interface LevelTile {
  id: string;
  title: string;
  locked: boolean;
  tooltip: string;
}

export function levelTiles(
  levels: readonly LevelSummary[],
  profile: UserProfile,
  knownPrerequisites: ReadonlyMap<string, readonly string[]> = new Map(),
): LevelTile[] {
  const unlocked = new Set(profile.unlocked);
  return levels.map((level) => {
    const locked = !unlocked.has(level.id);
    let tooltip = level.title;
    if (locked) {
      const missing = knownPrerequisites.get(level.id);
      tooltip =
        missing !== undefined && missing.length > 0
          ? `Locked — first finish: ${missing.join(", ")}`
          : "Locked — finish earlier levels to unlock";
    }
    return { id: level.id, title: level.title, locked, tooltip };
  });
}

export const LEADERBOARD_PLACEHOLDER = "No plays yet — be the first!";

export interface LeaderboardRow {
  rank: number;
  userId: string;
  bestScore: number;
  playCount: number;
  isSelf: boolean;
}

export function leaderboardRows(
  entries: readonly LeaderboardEntry[],
  selfUserId: string,
): LeaderboardRow[] {
  return entries.map((entry) => ({
    rank: entry.rank,
    userId: entry.user_id,
    bestScore: entry.best_score,
    playCount: entry.play_count,
    isSelf: entry.user_id === selfUserId,
  }));
}
