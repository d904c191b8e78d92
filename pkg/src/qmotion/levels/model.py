"""Level definitions and score reports."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..core.potential import ControlSample, TweezerSpec

SKILL_TAGS = ("deceleration", "tunneling", "stabilization")
DISPLAY_MODES = ("ball", "wave")
DEATH_THRESHOLD = 0.01  # zone probability above this kills the play
DEFAULT_STAR_THRESHOLDS = (0.5, 0.8, 0.95)
DEFAULT_MAX_POINTS = 1000
DEFAULT_TIME_PENALTY_WEIGHT = 0.2


class LevelValidationError(ValueError):
    """A level field violates its invariant; the message names the field."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field_name = field_name


@dataclass(frozen=True)
class StaticWell:
    """Gaussian landscape feature: depth > 0 is a well, depth < 0 a barrier."""

    center: float
    depth: float
    width: float

    def __post_init__(self) -> None:
        if self.depth == 0:
            raise LevelValidationError("static_potential", "feature depth/height must be nonzero")
        if not self.width > 0:
            raise LevelValidationError("static_potential", f"width must be positive, got {self.width}")


@dataclass(frozen=True)
class DeathZone:
    x_lo: float
    x_hi: float

    def __post_init__(self) -> None:
        if not self.x_hi > self.x_lo:
            raise LevelValidationError(
                "death_zones", f"zone needs x_hi > x_lo, got [{self.x_lo}, {self.x_hi}]"
            )


@dataclass(frozen=True)
class BonusPickup:
    x: float
    radius: float
    points: int

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise LevelValidationError("bonus_pickups", f"radius must be positive, got {self.radius}")
        if self.points <= 0 or int(self.points) != self.points:
            raise LevelValidationError(
                "bonus_pickups", f"points must be a positive integer, got {self.points}"
            )


@dataclass(frozen=True)
class Level:
    id: str
    title: str
    duration_max: float
    tweezer: TweezerSpec = field(default_factory=TweezerSpec)
    static_wells: tuple[StaticWell, ...] = ()
    initial_trap: ControlSample | int = 0
    target_trap: ControlSample | int = 0
    death_zones: tuple[DeathZone, ...] = ()
    bonus_pickups: tuple[BonusPickup, ...] = ()
    skill_tags: frozenset[str] = frozenset()
    star_thresholds: tuple[float, float, float] = DEFAULT_STAR_THRESHOLDS
    max_points: int = DEFAULT_MAX_POINTS
    time_penalty_weight: float = DEFAULT_TIME_PENALTY_WEIGHT
    display_mode: str = "wave"

    def __post_init__(self) -> None:
        object.__setattr__(self, "static_wells", tuple(self.static_wells))
        object.__setattr__(self, "death_zones", tuple(self.death_zones))
        object.__setattr__(self, "bonus_pickups", tuple(self.bonus_pickups))
        object.__setattr__(self, "skill_tags", frozenset(self.skill_tags))
        object.__setattr__(self, "star_thresholds", tuple(self.star_thresholds))
        if not self.id or not all(c.isalnum() or c == "_" for c in self.id):
            raise LevelValidationError("id", f"must be a nonempty [a-z0-9_] token, got {self.id!r}")
        if not self.title:
            raise LevelValidationError("title", "must not be empty")
        if not self.duration_max > 0:
            raise LevelValidationError("duration_max", f"must be positive, got {self.duration_max}")
        for trap_field, trap in (("initial_trap", self.initial_trap), ("target_trap", self.target_trap)):
            if isinstance(trap, int):
                if not 0 <= trap < len(self.static_wells):
                    raise LevelValidationError(
                        trap_field,
                        f"static well index {trap} out of range for {len(self.static_wells)} wells",
                    )
            else:
                try:
                    self.tweezer.check_sample(trap)
                except ValueError as err:
                    raise LevelValidationError(trap_field, str(err)) from err
        unknown = self.skill_tags - set(SKILL_TAGS)
        if unknown:
            raise LevelValidationError("skill_tags", f"unknown tags {sorted(unknown)}")
        f1, f2, f3 = self.star_thresholds
        if not (0.0 < f1 < f2 < f3 <= 1.0):
            raise LevelValidationError(
                "star_thresholds", f"need 0 < F1 < F2 < F3 <= 1, got {self.star_thresholds}"
            )
        if self.max_points <= 0 or int(self.max_points) != self.max_points:
            raise LevelValidationError("max_points", f"must be a positive integer, got {self.max_points}")
        if not 0.0 <= self.time_penalty_weight <= 1.0:
            raise LevelValidationError(
                "time_penalty_weight", f"must be in [0, 1], got {self.time_penalty_weight}"
            )
        if self.display_mode not in DISPLAY_MODES:
            raise LevelValidationError(
                "display_mode", f"must be one of {DISPLAY_MODES}, got {self.display_mode!r}"
            )


@dataclass(frozen=True)
class ScoreReport:
    """Outcome of one play. died forces total_score = 0 and stars = 0."""

    fidelity: float
    time_used: float
    time_penalty_fraction: float
    bonus_points: int
    total_score: int
    stars: int
    died: bool
    death_time: float | None = None
    death_zone: int | None = None
    feedback_trace: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "feedback_trace", tuple(self.feedback_trace))
        if self.total_score < 0 or int(self.total_score) != self.total_score:
            raise ValueError(f"total_score must be a non-negative integer, got {self.total_score}")
        if self.stars not in (0, 1, 2, 3):
            raise ValueError(f"stars must be 0..3, got {self.stars}")
        if self.died and (self.total_score != 0 or self.stars != 0):
            raise ValueError("a died play must score 0 with 0 stars")

    def to_dict(self) -> dict:
        return {
            "fidelity": self.fidelity,
            "time_used": self.time_used,
            "time_penalty_fraction": self.time_penalty_fraction,
            "bonus_points": self.bonus_points,
            "total_score": self.total_score,
            "stars": self.stars,
            "died": self.died,
            "death_time": self.death_time,
            "death_zone": self.death_zone,
            "feedback_trace": list(self.feedback_trace),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScoreReport":
        return cls(
            fidelity=data["fidelity"],
            time_used=data["time_used"],
            time_penalty_fraction=data["time_penalty_fraction"],
            bonus_points=data["bonus_points"],
            total_score=data["total_score"],
            stars=data["stars"],
            died=data["died"],
            death_time=data.get("death_time"),
            death_zone=data.get("death_zone"),
            feedback_trace=tuple(data.get("feedback_trace", ())),
        )
