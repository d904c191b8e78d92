export { ApiError, GameClient } from "./api.js";
export {
  DEFAULT_DRAG_SETTINGS,
  DragRecorder,
  MIN_SAMPLES_PER_SECOND,
  Viewport,
  type DragSettings,
} from "./control.js";
export { barModel, feedbackColor, starsFor, type BarColor, type BarModel } from "./feedback.js";
export { movePoint, resample, smooth, stretchTime } from "./finetune.js";
export {
  interpolatePath,
  makePath,
  pathDuration,
  pathFromPayload,
  pathPayload,
  type ControlPath,
} from "./path.js";
export {
  LEADERBOARD_PLACEHOLDER,
  leaderboardRows,
  levelTiles,
  type LeaderboardRow,
  type LevelTile,
} from "./panels.js";
export {
  densityMean,
  gaussianWell,
  landscapeValues,
  polyline,
  valueRange,
  type Polyline,
  type ValueRange,
} from "./render.js";
export { GameView, type Phase, type RenderFrame, type ViewOptions } from "./view.js";
export type * from "./types.js";
