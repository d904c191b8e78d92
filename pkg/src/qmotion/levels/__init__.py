"""Level definitions, the built-in catalog, state preparation, and scoring."""
from .catalog import (
    CATALOG_ORDER,
    LAB_BACHELORS,
    LAB_MASTERS,
    LAB_SKILLS,
    SCIENTIFIC_LEVELS,
    TUTORIAL_LEVELS,
    author_levels,
    author_reference,
    level_text,
    load_catalog,
    load_level,
    read_path_csv,
    reference_path,
    write_path_csv,
)
from .format import FORMAT_HEADER, LevelFormatError, parse_level, serialize_level
from .model import (
    DEATH_THRESHOLD,
    DEFAULT_MAX_POINTS,
    DEFAULT_STAR_THRESHOLDS,
    DEFAULT_TIME_PENALTY_WEIGHT,
    DISPLAY_MODES,
    SKILL_TAGS,
    BonusPickup,
    DeathZone,
    Level,
    LevelValidationError,
    ScoreReport,
    StaticWell,
)
from .reference import (
    carry_and_release_path,
    carry_ramp_path,
    min_jerk,
    park_and_tunnel_path,
    ramp_depth_path,
    scoop_and_carry_path,
    scoop_carry_release_path,
    straight_drag_path,
    transport_path,
    transport_samples,
    tunneling_transfer_time,
)
from .scoring import (
    FEEDBACK_COLORS,
    PlayValidationError,
    feedback_color,
    score_play,
    stars_for,
    validate_play,
)
from .states import (
    initial_state,
    landscape_at,
    static_landscape,
    target_state,
    trap_center,
    trap_ground_state,
    trap_potential,
)

__all__ = [
    "CATALOG_ORDER",
    "DEATH_THRESHOLD",
    "DEFAULT_MAX_POINTS",
    "DEFAULT_STAR_THRESHOLDS",
    "DEFAULT_TIME_PENALTY_WEIGHT",
    "DISPLAY_MODES",
    "FEEDBACK_COLORS",
    "FORMAT_HEADER",
    "LAB_BACHELORS",
    "LAB_MASTERS",
    "LAB_SKILLS",
    "SCIENTIFIC_LEVELS",
    "SKILL_TAGS",
    "TUTORIAL_LEVELS",
    "BonusPickup",
    "DeathZone",
    "Level",
    "LevelFormatError",
    "LevelValidationError",
    "PlayValidationError",
    "ScoreReport",
    "StaticWell",
    "author_levels",
    "author_reference",
    "carry_and_release_path",
    "carry_ramp_path",
    "feedback_color",
    "initial_state",
    "landscape_at",
    "level_text",
    "load_catalog",
    "load_level",
    "min_jerk",
    "park_and_tunnel_path",
    "ramp_depth_path",
    "read_path_csv",
    "reference_path",
    "scoop_and_carry_path",
    "scoop_carry_release_path",
    "score_play",
    "serialize_level",
    "parse_level",
    "static_landscape",
    "stars_for",
    "straight_drag_path",
    "target_state",
    "transport_path",
    "transport_samples",
    "trap_center",
    "trap_ground_state",
    "trap_potential",
    "tunneling_transfer_time",
    "validate_play",
    "write_path_csv",
]
