"""Text format for level files.

A level file is line-oriented. The first line declares the format
(``qmlevel 1``); every following line is a key and its arguments. Blank
lines and ``#`` comments are accepted on parse and never emitted by the
serializer, so ``serialize_level(parse_level(text))`` is canonical.

    qmlevel 1
    id tutorial_1
    title Just Scoop It
    display ball
    duration 2.0
    points 1000
    time_penalty 0.2
    stars 0.5 0.8 0.95
    skills deceleration
    tweezer sigma=0.05 depth_max=160.0 x_min=-0.75 x_max=0.75
    well center=0.5 depth=160.0 width=0.08
    barrier center=0.0 height=40.0 width=0.05
    start well 0
    target tweezer x0=-0.5 depth=160.0
    deathzone lo=-0.95 hi=-0.85
    bonus x=0.1 radius=0.05 points=100
"""
from __future__ import annotations

from ..core.potential import ControlSample, TweezerSpec
from .model import (
    BonusPickup,
    DeathZone,
    Level,
    StaticWell,
)

FORMAT_HEADER = "qmlevel 1"


class LevelFormatError(ValueError):
    """The text does not parse as a level file; carries the line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _parse_kv(line_no: int, key: str, tokens: list[str], fields: tuple[str, ...]) -> dict[str, float]:
    """Parse `name=value` tokens against an exact field set."""
    values: dict[str, float] = {}
    for token in tokens:
        name, eq, raw = token.partition("=")
        if not eq or not name or not raw:
            raise LevelFormatError(line_no, f"{key} expects name=value tokens, got {token!r}")
        if name not in fields:
            raise LevelFormatError(line_no, f"{key} does not take {name!r} (expected {fields})")
        if name in values:
            raise LevelFormatError(line_no, f"duplicate {name!r} in {key}")
        try:
            values[name] = float(raw)
        except ValueError:
            raise LevelFormatError(line_no, f"{key} {name} is not a number: {raw!r}") from None
    missing = [f for f in fields if f not in values]
    if missing:
        raise LevelFormatError(line_no, f"{key} is missing {missing}")
    return values


def _parse_trap(line_no: int, key: str, tokens: list[str]) -> ControlSample | int:
    if not tokens:
        raise LevelFormatError(line_no, f"{key} needs 'well <index>' or 'tweezer x0=... depth=...'")
    kind, rest = tokens[0], tokens[1:]
    if kind == "well":
        if len(rest) != 1:
            raise LevelFormatError(line_no, f"{key} well takes exactly one index")
        try:
            return int(rest[0])
        except ValueError:
            raise LevelFormatError(line_no, f"{key} well index is not an integer: {rest[0]!r}") from None
    if kind == "tweezer":
        values = _parse_kv(line_no, key, rest, ("x0", "depth"))
        return ControlSample(t=0.0, x0=values["x0"], amplitude=values["depth"])
    raise LevelFormatError(line_no, f"{key} kind must be 'well' or 'tweezer', got {kind!r}")


def parse_level(text: str) -> Level:
    lines = text.splitlines()
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise LevelFormatError(1, f"first line must be {FORMAT_HEADER!r}")

    scalars: dict[str, object] = {}
    wells: list[StaticWell] = []
    death_zones: list[DeathZone] = []
    pickups: list[BonusPickup] = []

    def set_once(line_no: int, key: str, value: object) -> None:
        if key in scalars:
            raise LevelFormatError(line_no, f"duplicate key {key!r}")
        scalars[key] = value

    for line_no, raw_line in enumerate(lines[1:], start=2):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        key, _, arg_text = line.partition(" ")
        tokens = arg_text.split()
        if key in ("id", "title", "display"):
            if not arg_text.strip():
                raise LevelFormatError(line_no, f"{key} needs a value")
            set_once(line_no, key, arg_text.strip())
        elif key in ("duration", "time_penalty"):
            if len(tokens) != 1:
                raise LevelFormatError(line_no, f"{key} takes exactly one number")
            try:
                set_once(line_no, key, float(tokens[0]))
            except ValueError:
                raise LevelFormatError(line_no, f"{key} is not a number: {tokens[0]!r}") from None
        elif key == "points":
            if len(tokens) != 1:
                raise LevelFormatError(line_no, "points takes exactly one integer")
            try:
                set_once(line_no, key, int(tokens[0]))
            except ValueError:
                raise LevelFormatError(line_no, f"points is not an integer: {tokens[0]!r}") from None
        elif key == "stars":
            if len(tokens) != 3:
                raise LevelFormatError(line_no, "stars takes exactly three thresholds")
            try:
                set_once(line_no, key, tuple(float(t) for t in tokens))
            except ValueError:
                raise LevelFormatError(line_no, f"stars thresholds must be numbers: {arg_text!r}") from None
        elif key == "skills":
            set_once(line_no, key, frozenset(tokens))
        elif key == "tweezer":
            values = _parse_kv(line_no, key, tokens, ("sigma", "depth_max", "x_min", "x_max"))
            set_once(line_no, key, TweezerSpec(**values))
        elif key == "well":
            values = _parse_kv(line_no, key, tokens, ("center", "depth", "width"))
            wells.append(StaticWell(values["center"], values["depth"], values["width"]))
        elif key == "barrier":
            values = _parse_kv(line_no, key, tokens, ("center", "height", "width"))
            wells.append(StaticWell(values["center"], -values["height"], values["width"]))
        elif key in ("start", "target"):
            set_once(line_no, key, _parse_trap(line_no, key, tokens))
        elif key == "deathzone":
            values = _parse_kv(line_no, key, tokens, ("lo", "hi"))
            death_zones.append(DeathZone(values["lo"], values["hi"]))
        elif key == "bonus":
            values = _parse_kv(line_no, key, tokens, ("x", "radius", "points"))
            pickups.append(BonusPickup(values["x"], values["radius"], int(values["points"])))
        else:
            raise LevelFormatError(line_no, f"unknown key {key!r}")

    for required in ("id", "title", "duration"):
        if required not in scalars:
            raise LevelFormatError(len(lines), f"missing required key {required!r}")

    kwargs: dict[str, object] = {
        "id": scalars["id"],
        "title": scalars["title"],
        "duration_max": scalars["duration"],
        "static_wells": tuple(wells),
        "death_zones": tuple(death_zones),
        "bonus_pickups": tuple(pickups),
    }
    if "display" in scalars:
        kwargs["display_mode"] = scalars["display"]
    if "points" in scalars:
        kwargs["max_points"] = scalars["points"]
    if "time_penalty" in scalars:
        kwargs["time_penalty_weight"] = scalars["time_penalty"]
    if "stars" in scalars:
        kwargs["star_thresholds"] = scalars["stars"]
    if "skills" in scalars:
        kwargs["skill_tags"] = scalars["skills"]
    if "tweezer" in scalars:
        kwargs["tweezer"] = scalars["tweezer"]
    if "start" in scalars:
        kwargs["initial_trap"] = scalars["start"]
    if "target" in scalars:
        kwargs["target_trap"] = scalars["target"]
    return Level(**kwargs)


def _format_float(value: float) -> str:
    return repr(float(value))


def _format_trap(trap: ControlSample | int) -> str:
    if isinstance(trap, int):
        return f"well {trap}"
    return f"tweezer x0={_format_float(trap.x0)} depth={_format_float(trap.amplitude)}"


def serialize_level(level: Level) -> str:
    tw = level.tweezer
    out = [
        FORMAT_HEADER,
        f"id {level.id}",
        f"title {level.title}",
        f"display {level.display_mode}",
        f"duration {_format_float(level.duration_max)}",
        f"points {level.max_points}",
        f"time_penalty {_format_float(level.time_penalty_weight)}",
        "stars " + " ".join(_format_float(v) for v in level.star_thresholds),
    ]
    if level.skill_tags:
        out.append("skills " + " ".join(sorted(level.skill_tags)))
    out.append(
        f"tweezer sigma={_format_float(tw.sigma)} depth_max={_format_float(tw.depth_max)} "
        f"x_min={_format_float(tw.x_min)} x_max={_format_float(tw.x_max)}"
    )
    for well in level.static_wells:
        if well.depth > 0:
            out.append(
                f"well center={_format_float(well.center)} "
                f"depth={_format_float(well.depth)} width={_format_float(well.width)}"
            )
        else:
            out.append(
                f"barrier center={_format_float(well.center)} "
                f"height={_format_float(-well.depth)} width={_format_float(well.width)}"
            )
    out.append(f"start {_format_trap(level.initial_trap)}")
    out.append(f"target {_format_trap(level.target_trap)}")
    for zone in level.death_zones:
        out.append(f"deathzone lo={_format_float(zone.x_lo)} hi={_format_float(zone.x_hi)}")
    for pickup in level.bonus_pickups:
        out.append(
            f"bonus x={_format_float(pickup.x)} radius={_format_float(pickup.radius)} "
            f"points={pickup.points}"
        )
    return "\n".join(out) + "\n"
