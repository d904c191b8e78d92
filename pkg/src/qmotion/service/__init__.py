"""Game backend: users, play storage, progression, leaderboards, metrics, API."""
from .api import ApiServer, level_detail, level_summary, path_from_json, path_to_json, replay_frames
from .metrics import EngagementMetrics, engagement_metrics
from .model import (
    BADGES_MODES,
    EXPERIMENT_CELLS,
    LEVELS_MODES,
    RECRUITMENT_ORIGINS,
    Badge,
    ConflictError,
    ExperimentCell,
    LeaderboardEntry,
    NotFoundError,
    ProgressionError,
    UserProfile,
)
from .progression import (
    FULL_SCIENTIFIC,
    PARTIAL_SCIENTIFIC,
    PLAY_COUNT_BADGES,
    missing_prerequisite,
    new_badges,
    unlocked_levels,
)
from .store import GameStore, SubmitResult, edge_loss_report

__all__ = [
    "ApiServer",
    "BADGES_MODES",
    "Badge",
    "ConflictError",
    "EXPERIMENT_CELLS",
    "EngagementMetrics",
    "ExperimentCell",
    "FULL_SCIENTIFIC",
    "GameStore",
    "LEVELS_MODES",
    "LeaderboardEntry",
    "NotFoundError",
    "PARTIAL_SCIENTIFIC",
    "PLAY_COUNT_BADGES",
    "ProgressionError",
    "RECRUITMENT_ORIGINS",
    "SubmitResult",
    "UserProfile",
    "edge_loss_report",
    "engagement_metrics",
    "level_detail",
    "level_summary",
    "missing_prerequisite",
    "new_badges",
    "path_from_json",
    "path_to_json",
    "replay_frames",
    "unlocked_levels",
]
