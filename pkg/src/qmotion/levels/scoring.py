"""Scoring a control path against a level.

A play evolves the level's initial state under the player's tweezer path.
At every sampled instant the running fidelity against the target state is
recorded (that is the feedback bar), death zones are checked, and bonus
pickups are collected when the position expectation passes within their
radius. The final score is

    total = round(max_points * fidelity * (1 - time_penalty_fraction)) + bonus

with time_penalty_fraction = time_penalty_weight * time_used / duration_max.
Entering a death zone (more than 1% probability inside it) ends the play with
zero points and zero stars; fidelity and collected bonuses stay on the report
for display.
"""
from __future__ import annotations

from ..core.grid import SimConfig
from ..core.evolve import step_stream
from ..core.wavefunction import WaveFunction, fidelity, zone_probability
from ..paths.model import ControlPath
from .model import DEATH_THRESHOLD, Level, ScoreReport
from .states import initial_state, landscape_at, target_state

FEEDBACK_COLORS = ("red", "yellow", "green")
DURATION_SLACK = 1e-9


class PlayValidationError(ValueError):
    """The path cannot be played on this level at all (budget or bounds)."""


def feedback_color(level: Level, fidelity_value: float) -> str:
    """Bar color for a fidelity value: red below F1, yellow below F2, else green."""
    f1, f2, _ = level.star_thresholds
    if fidelity_value < f1:
        return "red"
    if fidelity_value < f2:
        return "yellow"
    return "green"


def stars_for(level: Level, fidelity_value: float) -> int:
    return sum(fidelity_value >= threshold for threshold in level.star_thresholds)


def validate_play(level: Level, path: ControlPath) -> None:
    """Raise PlayValidationError if the path breaks the level's hard limits."""
    if path.duration > level.duration_max + DURATION_SLACK:
        raise PlayValidationError(
            f"path lasts {path.duration}, level allows at most {level.duration_max}"
        )
    for i, sample in enumerate(path.samples):
        try:
            level.tweezer.check_sample(sample)
        except ValueError as err:
            raise PlayValidationError(f"sample {i}: {err}") from err


def score_play(
    level: Level,
    path: ControlPath,
    config: SimConfig | None = None,
    sample_stride: int = 10,
) -> ScoreReport:
    """Evolve the play and score it. Raises PlayValidationError on bad input.

    Death zones, pickups, and the feedback trace are evaluated at the sampled
    instants (every sample_stride-th step), so the stride is part of the rules,
    not just a rendering choice.
    """
    if config is None:
        config = SimConfig()
    validate_play(level, path)

    start = initial_state(level, config)
    target = target_state(level, config)
    potential_at = landscape_at(level, path, config)

    feedback: list[float] = []
    died = False
    death_time: float | None = None
    death_zone: int | None = None
    bonus = 0
    collected: set[int] = set()

    for t, amplitudes in step_stream(start, potential_at, path.duration, config, sample_stride):
        psi = WaveFunction(amplitudes, config)
        feedback.append(fidelity(psi, target))
        for zone_index, zone in enumerate(level.death_zones):
            if zone_probability(psi, zone.x_lo, zone.x_hi) > DEATH_THRESHOLD:
                died = True
                death_time = t
                death_zone = zone_index
                break
        if died:
            break
        if level.bonus_pickups:
            position = psi.expectation_position()
            for pickup_index, pickup in enumerate(level.bonus_pickups):
                if pickup_index not in collected and abs(position - pickup.x) <= pickup.radius:
                    collected.add(pickup_index)
                    bonus += pickup.points

    final_fidelity = feedback[-1]
    time_used = death_time if died else path.duration
    penalty_fraction = level.time_penalty_weight * time_used / level.duration_max

    if died:
        total = 0
        stars = 0
    else:
        total = int(round(level.max_points * final_fidelity * (1.0 - penalty_fraction))) + bonus
        stars = stars_for(level, final_fidelity)

    return ScoreReport(
        fidelity=final_fidelity,
        time_used=time_used,
        time_penalty_fraction=penalty_fraction,
        bonus_points=bonus,
        total_score=total,
        stars=stars,
        died=died,
        death_time=death_time,
        death_zone=death_zone,
        feedback_trace=tuple(feedback),
    )
