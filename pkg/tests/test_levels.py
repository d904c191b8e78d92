"""Level model, file format, state preparation, and scoring."""
import math

import numpy as np
import pytest

from qmotion.core import ControlSample, SimConfig, TweezerSpec
from qmotion.core.stationary import eigenstates
from qmotion.core.wavefunction import fidelity
from qmotion.levels import (
    BonusPickup,
    DeathZone,
    Level,
    LevelFormatError,
    LevelValidationError,
    PlayValidationError,
    ScoreReport,
    StaticWell,
    feedback_color,
    initial_state,
    parse_level,
    score_play,
    serialize_level,
    stars_for,
    static_landscape,
    target_state,
    trap_potential,
    validate_play,
)
from qmotion.levels.reference import straight_drag_path, transport_path
from qmotion.paths.model import ControlPath

FAST = SimConfig(grid_points=128, dt=1e-3)


def hold_path(x0, amplitude, duration):
    return ControlPath(
        (ControlSample(0.0, x0, amplitude), ControlSample(duration, x0, amplitude)),
        origin="human",
    )


def simple_level(**overrides):
    fields = dict(
        id="lab",
        title="Lab",
        duration_max=1.0,
        tweezer=TweezerSpec(sigma=0.05, depth_max=160.0),
        initial_trap=ControlSample(0.0, -0.3, 160.0),
        target_trap=ControlSample(0.0, 0.3, 160.0),
    )
    fields.update(overrides)
    return Level(**fields)


class TestLevelModel:
    def test_valid_level_round_trips_defaults(self):
        level = simple_level()
        assert level.star_thresholds == (0.5, 0.8, 0.95)
        assert level.max_points == 1000
        assert level.time_penalty_weight == 0.2
        assert level.display_mode == "wave"

    def test_bad_threshold_order_names_field(self):
        with pytest.raises(LevelValidationError) as err:
            simple_level(star_thresholds=(0.8, 0.5, 0.95))
        assert "star_thresholds" in str(err.value)

    def test_well_index_out_of_range(self):
        with pytest.raises(LevelValidationError) as err:
            simple_level(static_wells=(StaticWell(0.0, 160.0, 0.08),), initial_trap=1)
        assert "initial_trap" in str(err.value)

    def test_zero_depth_well_rejected(self):
        with pytest.raises(LevelValidationError):
            StaticWell(0.0, 0.0, 0.08)

    def test_death_zone_needs_positive_width(self):
        with pytest.raises(LevelValidationError):
            DeathZone(0.4, 0.4)

    def test_bonus_pickup_needs_positive_points(self):
        with pytest.raises(LevelValidationError):
            BonusPickup(0.0, 0.05, 0)

    def test_unknown_skill_tag_rejected(self):
        with pytest.raises(LevelValidationError) as err:
            simple_level(skill_tags=frozenset({"levitation"}))
        assert "skill_tags" in str(err.value)

    def test_trap_sample_must_fit_tweezer(self):
        with pytest.raises(LevelValidationError):
            simple_level(initial_trap=ControlSample(0.0, -0.9, 160.0))

    def test_score_report_death_consistency(self):
        with pytest.raises(ValueError):
            ScoreReport(
                fidelity=0.9,
                time_used=0.5,
                time_penalty_fraction=0.1,
                bonus_points=0,
                total_score=100,
                stars=2,
                died=True,
            )


class TestLevelFormat:
    def test_round_trip_is_canonical(self):
        level = simple_level(
            static_wells=(StaticWell(0.1, 120.0, 0.06), StaticWell(-0.2, -30.0, 0.05)),
            death_zones=(DeathZone(0.5, 0.7),),
            bonus_pickups=(BonusPickup(0.0, 0.05, 100),),
            skill_tags=frozenset({"tunneling"}),
        )
        text = serialize_level(level)
        again = parse_level(text)
        assert again == level
        assert serialize_level(again) == text

    def test_missing_header_rejected(self):
        with pytest.raises(LevelFormatError) as err:
            parse_level("id x\n")
        assert err.value.line_no == 1

    def test_threshold_violation_names_field(self):
        text = serialize_level(simple_level()).replace(
            "stars 0.5 0.8 0.95", "stars 0.8 0.5 0.95"
        )
        with pytest.raises(LevelValidationError) as err:
            parse_level(text)
        assert "star_thresholds" in str(err.value)

    def test_syntax_error_reports_line_number(self):
        text = "qmlevel 1\nid lab\ntitle Lab\nduration nope\n"
        with pytest.raises(LevelFormatError) as err:
            parse_level(text)
        assert err.value.line_no == 4

    def test_comments_and_blank_lines_ignored(self):
        text = serialize_level(simple_level())
        padded = text.replace("title Lab\n", "title Lab\n\n# a comment\n")
        assert parse_level(padded) == simple_level()

    def test_duplicate_scalar_key_rejected(self):
        text = serialize_level(simple_level()) + "duration 1.0\n"
        with pytest.raises(LevelFormatError):
            parse_level(text)


class TestStates:
    def test_identity_level_states_match(self):
        level = simple_level(target_trap=ControlSample(0.0, -0.3, 160.0))
        a = initial_state(level, FAST)
        b = target_state(level, FAST)
        assert fidelity(a, b) > 1.0 - 1e-8

    def test_states_are_normalized(self):
        level = simple_level()
        assert abs(initial_state(level, FAST).norm_sq() - 1.0) < 1e-9
        assert abs(target_state(level, FAST).norm_sq() - 1.0) < 1e-9

    def test_well_start_matches_eigensolver(self):
        level = simple_level(
            static_wells=(StaticWell(0.4, 160.0, 0.08),),
            tweezer=TweezerSpec(sigma=0.08, depth_max=160.0),
            initial_trap=0,
        )
        psi = initial_state(level, FAST)
        ground = eigenstates(static_landscape(level, FAST), FAST, k=1)[0].state
        assert abs(fidelity(psi, ground) - 1.0) < 1e-5

    def test_trap_potential_adds_tweezer(self):
        level = simple_level(static_wells=(StaticWell(0.4, 160.0, 0.08),))
        static = static_landscape(level, FAST)
        parked = trap_potential(level, ControlSample(0.0, -0.3, 160.0), FAST)
        at_tweezer = int(np.argmin(np.abs(FAST.x - (-0.3))))
        diff = parked.values - static.values
        assert diff[at_tweezer] < -100.0
        assert np.all(diff <= 1e-12)  # tweezer only ever deepens the landscape
        far = np.abs(FAST.x - (-0.3)) > 0.5
        assert np.all(np.abs(diff[far]) < 1e-3)  # and is local to its focus


class TestScoring:
    def test_do_nothing_on_identity_level(self):
        level = simple_level(target_trap=ControlSample(0.0, -0.3, 160.0))
        report = score_play(level, hold_path(-0.3, 160.0, 0.05), FAST)
        assert report.fidelity > 0.999
        assert report.stars == 3
        assert not report.died

    def test_time_penalty_rewards_short_plays(self):
        level = simple_level(duration_max=1.0)
        slow = score_play(level, transport_path(-0.3, 0.3, 160.0, 1.0), FAST)
        fast = score_play(level, transport_path(-0.3, 0.3, 160.0, 0.5), FAST)
        assert fast.fidelity > 0.99 and slow.fidelity > 0.99
        assert fast.total_score > slow.total_score
        assert math.isclose(slow.time_penalty_fraction, 0.2)
        assert math.isclose(fast.time_penalty_fraction, 0.1)

    def test_drag_through_death_zone_dies_with_zero_score(self):
        level = simple_level(
            duration_max=1.5,
            death_zones=(DeathZone(0.55, 0.75),),
            tweezer=TweezerSpec(sigma=0.05, depth_max=160.0, x_min=-0.9, x_max=0.9),
        )
        report = score_play(level, transport_path(-0.3, 0.65, 160.0, 0.8), FAST)
        assert report.died
        assert report.total_score == 0
        assert report.stars == 0
        assert report.death_zone == 0
        assert report.death_time is not None and report.death_time <= 0.8
        assert report.fidelity >= 0.0  # kept for display

    def test_death_truncates_time_used(self):
        level = simple_level(
            duration_max=1.5,
            death_zones=(DeathZone(0.55, 0.75),),
            tweezer=TweezerSpec(sigma=0.05, depth_max=160.0, x_min=-0.9, x_max=0.9),
        )
        report = score_play(level, transport_path(-0.3, 0.65, 160.0, 0.8), FAST)
        assert report.time_used == report.death_time

    def test_bonus_pickup_collected_once(self):
        level = simple_level(
            duration_max=1.0,
            bonus_pickups=(BonusPickup(0.0, 0.05, 100),),
        )
        report = score_play(level, transport_path(-0.3, 0.3, 160.0, 0.6), FAST)
        assert report.bonus_points == 100
        base = round(
            level.max_points * report.fidelity * (1.0 - report.time_penalty_fraction)
        )
        assert report.total_score == base + 100

    def test_missed_pickup_awards_nothing(self):
        level = simple_level(
            duration_max=1.0,
            bonus_pickups=(BonusPickup(0.6, 0.02, 100),),
        )
        report = score_play(level, transport_path(-0.3, 0.3, 160.0, 0.6), FAST)
        assert report.bonus_points == 0

    def test_feedback_trace_tracks_progress(self):
        level = simple_level(duration_max=1.0)
        report = score_play(level, transport_path(-0.3, 0.3, 160.0, 0.8), FAST)
        assert report.feedback_trace[0] < 0.1
        assert report.feedback_trace[-1] == pytest.approx(report.fidelity)
        assert all(0.0 <= v <= 1.0 for v in report.feedback_trace)

    def test_fast_drag_leaves_wave_behind(self):
        # A weak trap yanked across the box loses its cargo: the wave stays
        # near the start and the overlap with the target collapses.
        level = simple_level(
            duration_max=1.0,
            initial_trap=ControlSample(0.0, -0.3, 60.0),
            target_trap=ControlSample(0.0, 0.3, 60.0),
        )
        report = score_play(level, transport_path(-0.3, 0.3, 60.0, 0.05), FAST)
        assert report.fidelity < level.star_thresholds[0]
        assert report.stars == 0

    def test_overlong_play_rejected(self):
        level = simple_level(duration_max=1.0)
        with pytest.raises(PlayValidationError):
            validate_play(level, hold_path(-0.3, 160.0, 1.2))

    def test_out_of_bounds_sample_rejected(self):
        level = simple_level()
        with pytest.raises(PlayValidationError) as err:
            validate_play(level, hold_path(-0.85, 160.0, 0.5))
        assert "sample" in str(err.value)

    def test_scoring_monotone_in_fidelity(self):
        level = simple_level()
        weight = level.time_penalty_weight
        scores = [
            round(level.max_points * f * (1.0 - weight * 0.5)) for f in (0.2, 0.5, 0.8, 0.99)
        ]
        assert scores == sorted(scores)

    def test_stars_pure_function_of_thresholds(self):
        level = simple_level(star_thresholds=(0.5, 0.8, 0.95))
        assert stars_for(level, 0.49) == 0
        assert stars_for(level, 0.5) == 1
        assert stars_for(level, 0.8) == 2
        assert stars_for(level, 0.95) == 3
        assert stars_for(level, 1.0) == 3


class TestFeedbackColor:
    def test_zero_is_red(self):
        assert feedback_color(simple_level(), 0.0) == "red"

    def test_boundaries_right_closed(self):
        level = simple_level()
        f1, f2, _ = level.star_thresholds
        assert feedback_color(level, f1 - 1e-12) == "red"
        assert feedback_color(level, f1) == "yellow"
        assert feedback_color(level, f2 - 1e-12) == "yellow"
        assert feedback_color(level, f2) == "green"
        assert feedback_color(level, 1.0) == "green"

    def test_color_rank_monotone(self):
        level = simple_level()
        rank = {"red": 0, "yellow": 1, "green": 2}
        values = np.linspace(0.0, 1.0, 41)
        ranks = [rank[feedback_color(level, float(v))] for v in values]
        assert ranks == sorted(ranks)
