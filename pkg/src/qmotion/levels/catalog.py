"""The built-in level set and its shipped reference solutions.

Levels are authored here as code (the single source of truth); the shipped
``data/*.qmlevel`` files and ``data/paths/*.csv`` reference paths are
generated from these definitions and must stay in sync (a test guards the
round trip).  The set mirrors the intended learning arc: seven tutorials,
three skill labs with bachelor and master tiers, and two scientific levels.
"""
from __future__ import annotations

import csv
import io
from importlib import resources

from ..core.grid import SimConfig
from ..core.potential import ControlSample, TweezerSpec
from ..paths.model import ControlPath, path_from_arrays
from .format import parse_level, serialize_level
from .model import BonusPickup, DeathZone, Level, StaticWell
from .reference import (
    carry_and_release_path,
    carry_ramp_path,
    park_and_tunnel_path,
    ramp_depth_path,
    scoop_and_carry_path,
    scoop_carry_release_path,
    transport_path,
)

TUTORIAL_LEVELS = (
    "tutorial_1",
    "tutorial_2",
    "tutorial_3",
    "tutorial_4",
    "tutorial_5",
    "tutorial_6",
    "tutorial_7",
)
LAB_BACHELORS = {
    "cool": (
        "cool_bachelor_1",
        "cool_bachelor_2",
        "cool_bachelor_3",
        "cool_bachelor_4",
    ),
    "tunneling": (
        "tunneling_bachelor_1",
        "tunneling_bachelor_2",
        "tunneling_bachelor_3",
        "tunneling_bachelor_4",
    ),
    "control": (
        "control_bachelor_1",
        "control_bachelor_2",
        "control_bachelor_3",
        "control_bachelor_4",
    ),
}
LAB_MASTERS = {
    "cool": ("cool_master_1", "cool_master_2"),
    "tunneling": ("tunneling_master_1", "tunneling_master_2"),
    "control": ("control_master_1", "control_master_2"),
}
SCIENTIFIC_LEVELS = ("bring_home_water_fast", "split_delivery")

LAB_SKILLS = {"cool": "deceleration", "tunneling": "tunneling", "control": "stabilization"}

CATALOG_ORDER = (
    TUTORIAL_LEVELS
    + LAB_BACHELORS["cool"]
    + LAB_MASTERS["cool"]
    + LAB_BACHELORS["tunneling"]
    + LAB_MASTERS["tunneling"]
    + LAB_BACHELORS["control"]
    + LAB_MASTERS["control"]
    + SCIENTIFIC_LEVELS
)

_NARROW = TweezerSpec(sigma=0.05, depth_max=160.0)
_SOFT_NARROW = TweezerSpec(sigma=0.05, depth_max=60.0)
_WIDE_DEEP = TweezerSpec(sigma=0.08, depth_max=200.0)
_WIDE = TweezerSpec(sigma=0.08, depth_max=160.0)
_WIDE_LONG = TweezerSpec(sigma=0.08, depth_max=160.0, x_min=-0.85, x_max=0.85)


def _tutorials() -> list[Level]:
    return [
        Level(
            id="tutorial_1",
            title="First Steps",
            duration_max=2.0,
            tweezer=_NARROW,
            initial_trap=ControlSample(0.0, -0.3, 160.0),
            target_trap=ControlSample(0.0, 0.3, 160.0),
            display_mode="ball",
        ),
        Level(
            id="tutorial_2",
            title="Over the Bump",
            duration_max=2.0,
            tweezer=_NARROW,
            static_wells=(StaticWell(0.0, -30.0, 0.05),),
            initial_trap=ControlSample(0.0, -0.3, 160.0),
            target_trap=ControlSample(0.0, 0.3, 160.0),
            display_mode="ball",
        ),
        Level(
            id="tutorial_3",
            title="Scoop It Up",
            duration_max=2.0,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(-0.4, 160.0, 0.08),),
            initial_trap=0,
            target_trap=ControlSample(0.0, 0.4, 200.0),
            display_mode="ball",
        ),
        Level(
            id="tutorial_4",
            title="Mind the Edges",
            duration_max=1.5,
            tweezer=_NARROW,
            initial_trap=ControlSample(0.0, -0.3, 160.0),
            target_trap=ControlSample(0.0, 0.3, 160.0),
            death_zones=(DeathZone(-0.75, -0.55), DeathZone(0.55, 0.75)),
            display_mode="ball",
        ),
        Level(
            id="tutorial_5",
            title="Collector",
            duration_max=1.5,
            tweezer=_NARROW,
            initial_trap=ControlSample(0.0, -0.3, 160.0),
            target_trap=ControlSample(0.0, 0.3, 160.0),
            death_zones=(DeathZone(-0.75, -0.55), DeathZone(0.55, 0.75)),
            bonus_pickups=(BonusPickup(0.0, 0.05, 100), BonusPickup(0.15, 0.05, 50)),
            display_mode="ball",
        ),
        Level(
            id="tutorial_6",
            title="Gentle Touch",
            duration_max=2.0,
            tweezer=_SOFT_NARROW,
            initial_trap=ControlSample(0.0, -0.3, 60.0),
            target_trap=ControlSample(0.0, 0.3, 60.0),
            skill_tags=frozenset({"deceleration"}),
            display_mode="ball",
        ),
        Level(
            id="tutorial_7",
            title="Waves Ahead",
            duration_max=2.5,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(-0.3, 160.0, 0.08),),
            initial_trap=0,
            target_trap=ControlSample(0.0, 0.3, 200.0),
            death_zones=(DeathZone(-0.8, -0.6), DeathZone(0.6, 0.8)),
            display_mode="wave",
        ),
    ]


def _cool_lab() -> list[Level]:
    tags = frozenset({LAB_SKILLS["cool"]})

    def hop(level_id: str, title: str, half_span: float, duration: float, wells=()) -> Level:
        return Level(
            id=level_id,
            title=title,
            duration_max=duration,
            tweezer=_NARROW,
            static_wells=wells,
            initial_trap=ControlSample(0.0, -half_span, 160.0),
            target_trap=ControlSample(0.0, half_span, 160.0),
            skill_tags=tags,
        )

    return [
        hop("cool_bachelor_1", "Ease It Over", 0.3, 0.6),
        hop("cool_bachelor_2", "Longer Haul", 0.4, 0.55),
        hop("cool_bachelor_3", "The Long Road", 0.5, 0.55),
        hop("cool_bachelor_4", "Bump En Route", 0.4, 0.75, (StaticWell(0.0, -25.0, 0.05),)),
        hop("cool_master_1", "No Time to Spare", 0.6, 0.45),
        hop("cool_master_2", "Rough Passage", 0.6, 0.65, (StaticWell(0.35, -25.0, 0.05),)),
    ]


def _tunneling_lab() -> list[Level]:
    tags = frozenset({LAB_SKILLS["tunneling"]})

    def seep(level_id: str, title: str, well_x: float, target_x: float, duration: float,
             zones=(), pickups=()) -> Level:
        return Level(
            id=level_id,
            title=title,
            duration_max=duration,
            tweezer=_WIDE,
            static_wells=(StaticWell(well_x, 160.0, 0.08),),
            initial_trap=0,
            target_trap=ControlSample(0.0, target_x, 160.0),
            death_zones=zones,
            bonus_pickups=pickups,
            skill_tags=tags,
        )

    return [
        seep("tunneling_bachelor_1", "Through the Wall", 0.4, -0.45, 1.0),
        seep("tunneling_bachelor_2", "Patient Neighbor", 0.5, -0.5, 1.2),
        seep("tunneling_bachelor_3", "Slow Seep", 0.5, -0.5, 1.4),
        seep("tunneling_bachelor_4", "Toll Road", 0.45, -0.45, 1.1,
             pickups=(BonusPickup(-0.2, 0.05, 150),)),
        seep("tunneling_master_1", "Long Reach", 0.55, -0.5, 1.8),
        seep("tunneling_master_2", "Forbidden Corridor", 0.55, -0.5, 2.4,
             zones=(DeathZone(0.29, 0.34),)),
    ]


def _control_lab() -> list[Level]:
    tags = frozenset({LAB_SKILLS["control"]})
    return [
        Level(
            id="control_bachelor_1",
            title="Soft Landing",
            duration_max=1.0,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(0.0, 160.0, 0.08),),
            initial_trap=ControlSample(0.0, 0.0, 200.0),
            target_trap=0,
            skill_tags=tags,
        ),
        Level(
            id="control_bachelor_2",
            title="Carry and Drop",
            duration_max=1.2,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(0.4, 160.0, 0.08),),
            initial_trap=ControlSample(0.0, -0.4, 200.0),
            target_trap=0,
            skill_tags=tags,
        ),
        Level(
            id="control_bachelor_3",
            title="Drop Over the Hill",
            duration_max=1.4,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(0.4, 160.0, 0.08), StaticWell(0.0, -35.0, 0.05)),
            initial_trap=ControlSample(0.0, -0.4, 200.0),
            target_trap=0,
            skill_tags=tags,
        ),
        Level(
            id="control_bachelor_4",
            title="Careful Delivery",
            duration_max=1.2,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(0.4, 160.0, 0.08),),
            initial_trap=ControlSample(0.0, -0.4, 200.0),
            target_trap=0,
            death_zones=(DeathZone(-0.85, -0.68), DeathZone(0.68, 0.85)),
            skill_tags=tags,
        ),
        Level(
            id="control_master_1",
            title="Well to Well",
            duration_max=1.9,
            tweezer=_WIDE_DEEP,
            static_wells=(StaticWell(-0.45, 160.0, 0.08), StaticWell(0.45, 160.0, 0.08)),
            initial_trap=0,
            target_trap=1,
            skill_tags=tags,
        ),
        Level(
            id="control_master_2",
            title="Ferry Over the Ridge",
            duration_max=2.0,
            tweezer=_WIDE_DEEP,
            static_wells=(
                StaticWell(-0.45, 160.0, 0.08),
                StaticWell(0.45, 160.0, 0.08),
                StaticWell(0.0, -40.0, 0.05),
            ),
            initial_trap=0,
            target_trap=1,
            skill_tags=tags,
        ),
    ]


def _scientific() -> list[Level]:
    return [
        Level(
            id="bring_home_water_fast",
            title="Bring Home Water Fast",
            duration_max=1.3,
            tweezer=_WIDE,
            static_wells=(StaticWell(0.5, 160.0, 0.08),),
            initial_trap=0,
            target_trap=ControlSample(0.0, -0.5, 160.0),
            skill_tags=frozenset({"tunneling", "deceleration"}),
        ),
        Level(
            id="split_delivery",
            title="Split Delivery",
            duration_max=0.6,
            tweezer=_WIDE_LONG,
            static_wells=(StaticWell(0.0, 100.2, 0.08), StaticWell(0.56, 99.8, 0.08)),
            initial_trap=ControlSample(0.0, -0.55, 140.0),
            target_trap=0,
            skill_tags=frozenset({"tunneling", "stabilization"}),
        ),
    ]


def author_levels() -> dict[str, Level]:
    """All built-in levels keyed by id, in catalog order."""
    levels = _tutorials() + _cool_lab() + _tunneling_lab() + _control_lab() + _scientific()
    by_id = {level.id: level for level in levels}
    return {level_id: by_id[level_id] for level_id in CATALOG_ORDER}


def _hop_reference(level: Level, duration: float) -> ControlPath:
    start = level.initial_trap
    end = level.target_trap
    return transport_path(start.x0, end.x0, start.amplitude, duration)


def author_reference(level: Level, config: SimConfig) -> ControlPath:
    """Build the shipped reference solution for a built-in level.

    Tunneling recipes derive their hold time from the eigensplitting at the
    given config, so the shipped files are generated at the default config.
    """
    recipes = {
        "tutorial_1": lambda: _hop_reference(level, 0.8),
        "tutorial_2": lambda: _hop_reference(level, 0.9),
        "tutorial_3": lambda: scoop_and_carry_path(-0.4, 0.4, 200.0, 0.2, 0.9),
        "tutorial_4": lambda: _hop_reference(level, 0.5),
        "tutorial_5": lambda: _hop_reference(level, 0.6),
        "tutorial_6": lambda: _hop_reference(level, 1.0),
        "tutorial_7": lambda: scoop_and_carry_path(-0.3, 0.3, 200.0, 0.2, 0.9),
        "cool_bachelor_1": lambda: _hop_reference(level, 0.30),
        "cool_bachelor_2": lambda: _hop_reference(level, 0.35),
        "cool_bachelor_3": lambda: _hop_reference(level, 0.35),
        "cool_bachelor_4": lambda: _hop_reference(level, 0.50),
        "cool_master_1": lambda: _hop_reference(level, 0.38),
        "cool_master_2": lambda: _hop_reference(level, 0.55),
        "tunneling_bachelor_1": lambda: park_and_tunnel_path(
            level, 0.10, 160.0, config, carry_duration=0.35, hold_scale=0.55),
        "tunneling_bachelor_2": lambda: park_and_tunnel_path(
            level, 0.16, 160.0, config, carry_duration=0.35, hold_scale=0.75),
        "tunneling_bachelor_3": lambda: park_and_tunnel_path(
            level, 0.12, 160.0, config, carry_duration=0.40, hold_scale=0.85),
        "tunneling_bachelor_4": lambda: park_and_tunnel_path(
            level, 0.15, 160.0, config, carry_duration=0.35, hold_scale=0.55),
        "tunneling_master_1": lambda: park_and_tunnel_path(
            level, 0.13, 160.0, config, carry_duration=0.40, hold_scale=0.90),
        "tunneling_master_2": lambda: park_and_tunnel_path(
            level, 0.08, 160.0, config, carry_duration=0.45, hold_scale=0.85),
        "control_bachelor_1": lambda: ramp_depth_path(0.0, 200.0, 0.0, 0.5),
        "control_bachelor_2": lambda: carry_and_release_path(-0.4, 0.4, 200.0, 0.65, 0.35),
        "control_bachelor_3": lambda: carry_and_release_path(-0.4, 0.4, 200.0, 0.70, 0.35),
        "control_bachelor_4": lambda: carry_and_release_path(-0.4, 0.4, 200.0, 0.60, 0.30),
        "control_master_1": lambda: scoop_carry_release_path(
            -0.45, 0.45, 200.0, 0.2, 1.0, 0.45),
        "control_master_2": lambda: scoop_carry_release_path(
            -0.45, 0.45, 200.0, 0.2, 1.1, 0.45),
        "bring_home_water_fast": lambda: park_and_tunnel_path(
            level, 0.16, 160.0, config, carry_duration=0.35, hold_scale=0.75),
        "split_delivery": lambda: carry_ramp_path(-0.55, 0.68, 0.6, 140.0, 80.0),
    }
    try:
        recipe = recipes[level.id]
    except KeyError:
        raise KeyError(f"no reference recipe for level {level.id!r}") from None
    return recipe()


def _data_root():
    return resources.files("qmotion.levels") / "data"


def load_level(level_id: str) -> Level:
    """Load one built-in level from its shipped file."""
    text = (_data_root() / f"{level_id}.qmlevel").read_text(encoding="utf-8")
    return parse_level(text)


def load_catalog() -> dict[str, Level]:
    """All built-in levels, parsed from the shipped files, in catalog order."""
    return {level_id: load_level(level_id) for level_id in CATALOG_ORDER}


def reference_path(level_id: str) -> ControlPath:
    """The shipped reference solution for a built-in level."""
    text = (_data_root() / "paths" / f"{level_id}.csv").read_text(encoding="utf-8")
    return read_path_csv(text)


def read_path_csv(text: str) -> ControlPath:
    """Parse a control path from ``t,x0,amplitude`` CSV text."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["t", "x0", "amplitude"]:
        raise ValueError(f"expected header t,x0,amplitude, got {header}")
    rows = [(float(t), float(x0), float(a)) for t, x0, a in reader]
    t, x0, a = zip(*rows)
    return path_from_arrays(t, x0, a, origin="reference")


def write_path_csv(path: ControlPath) -> str:
    """Serialize a control path as ``t,x0,amplitude`` CSV text."""
    lines = ["t,x0,amplitude"]
    for sample in path.samples:
        lines.append(f"{sample.t!r},{sample.x0!r},{sample.amplitude!r}")
    return "\n".join(lines) + "\n"


def level_text(level: Level) -> str:
    """Canonical file text for a level (what the generator ships)."""
    return serialize_level(level)
