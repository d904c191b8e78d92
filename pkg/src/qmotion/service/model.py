"""Game-service domain types: users, cells, leaderboard rows, badges."""
from __future__ import annotations

from dataclasses import dataclass, field

RECRUITMENT_ORIGINS = ("forced_by_talk", "voluntary_by_talk", "online_media", "unknown")
LEVELS_MODES = ("locked", "open")
BADGES_MODES = ("on", "off")


class ConflictError(ValueError):
    """The request clashes with existing state (e.g. duplicate user name)."""


class NotFoundError(KeyError):
    """No such user, level, or play."""

    def __str__(self) -> str:  # KeyError quotes its message; keep it plain
        return self.args[0] if self.args else ""


class ProgressionError(ValueError):
    """The level is not unlocked yet; names the missing prerequisite."""

    def __init__(self, level_id: str, missing: str):
        super().__init__(f"level {level_id!r} is locked: complete {missing!r} first")
        self.level_id = level_id
        self.missing = missing


@dataclass(frozen=True)
class ExperimentCell:
    """One corner of the 2x2 study design."""

    levels_mode: str
    badges_mode: str

    def __post_init__(self) -> None:
        if self.levels_mode not in LEVELS_MODES:
            raise ValueError(f"levels_mode must be one of {LEVELS_MODES}, got {self.levels_mode!r}")
        if self.badges_mode not in BADGES_MODES:
            raise ValueError(f"badges_mode must be one of {BADGES_MODES}, got {self.badges_mode!r}")

    def to_dict(self) -> dict:
        return {"levels_mode": self.levels_mode, "badges_mode": self.badges_mode}


EXPERIMENT_CELLS = tuple(
    ExperimentCell(levels_mode, badges_mode)
    for levels_mode in LEVELS_MODES
    for badges_mode in BADGES_MODES
)


@dataclass(frozen=True)
class Badge:
    badge_id: str
    title: str
    kind: str  # performance | engagement
    criterion: str
    awarded_at: float

    def __post_init__(self) -> None:
        if self.kind not in ("performance", "engagement"):
            raise ValueError(f"badge kind must be performance or engagement, got {self.kind!r}")

    def to_dict(self) -> dict:
        return {
            "badge_id": self.badge_id,
            "title": self.title,
            "kind": self.kind,
            "criterion": self.criterion,
            "awarded_at": self.awarded_at,
        }


@dataclass(frozen=True)
class LeaderboardEntry:
    level_id: str
    user_id: str
    best_score: int
    play_count: int
    rank: int

    def to_dict(self) -> dict:
        return {
            "level_id": self.level_id,
            "user_id": self.user_id,
            "best_score": self.best_score,
            "play_count": self.play_count,
            "rank": self.rank,
        }


@dataclass
class UserProfile:
    """A registered player. The store owns all mutation after registration;
    the experiment cell in particular is assigned exactly once."""

    user_id: str
    name: str
    registered_at: float
    recruitment_origin: str
    experiment_cell: ExperimentCell
    badges: list[Badge] = field(default_factory=list)
    unlocked: set[str] = field(default_factory=set)

    def __post_init__(self) -> None:
        if self.recruitment_origin not in RECRUITMENT_ORIGINS:
            raise ValueError(
                f"recruitment_origin must be one of {RECRUITMENT_ORIGINS}, "
                f"got {self.recruitment_origin!r}"
            )

    def to_dict(self) -> dict:
        return {
            "user_id": self.user_id,
            "name": self.name,
            "registered_at": self.registered_at,
            "recruitment_origin": self.recruitment_origin,
            "experiment_cell": self.experiment_cell.to_dict(),
            "badges": [b.to_dict() for b in self.badges],
            "unlocked": sorted(self.unlocked),
        }
