"""Optimizer families: determinism, trace discipline, and search behavior."""
import numpy as np
import pytest

from qmotion.core import ControlSample, SimConfig
from qmotion.levels import PlayValidationError, load_level, reference_path
from qmotion.levels.reference import carry_ramp_path, transport_path
from qmotion.optimize import (
    OptimizationRun,
    OptimizerConfig,
    TraceEntry,
    convergence_report,
    hybrid_optimize,
    local_optimize,
    read_trace_csv,
    stochastic_optimize,
    trace_csv,
)
import qmotion.optimize.model as optimize_model
from qmotion.levels.scoring import validate_play
from qmotion.paths.model import ControlPath
from tests.test_levels import hold_path, simple_level

FAST = SimConfig(grid_points=128, dt=1e-3)


def local_config(budget, **overrides):
    return OptimizerConfig(family="local", evaluation_budget=budget, **overrides)


def ga_config(budget, **overrides):
    return OptimizerConfig(family="stochastic", evaluation_budget=budget, **overrides)


class TestOptimizerConfig:
    def test_family_must_be_known(self):
        with pytest.raises(ValueError):
            OptimizerConfig(family="annealing", evaluation_budget=10)

    def test_budget_at_least_one(self):
        with pytest.raises(ValueError):
            local_config(0)

    def test_population_at_least_two(self):
        with pytest.raises(ValueError):
            ga_config(10, population=1)

    def test_steps_positive(self):
        for field in ("step_x0", "step_amplitude", "step_time", "step_decay"):
            with pytest.raises(ValueError):
                local_config(10, **{field: 0.0})

    def test_zero_mutation_scale_allowed(self):
        assert ga_config(10, mutation_scale=0.0).mutation_scale == 0.0

    def test_elites_and_immigrants_leave_room_for_offspring(self):
        with pytest.raises(ValueError):
            ga_config(10, population=4, elite_fraction=0.5, immigrants=2)

    def test_elite_count_rounds_but_keeps_one(self):
        assert ga_config(10, population=32, elite_fraction=0.125).elite_count == 4
        assert ga_config(10, population=8, elite_fraction=0.01).elite_count == 1


class TestRunRecord:
    def _run(self, trace, best_score):
        return OptimizationRun(
            level_id="lab",
            config=local_config(10),
            best_path=hold_path(-0.3, 160.0, 0.5),
            trace=trace,
            evaluations_used=len(trace),
            best_score=best_score,
            best_fidelity=0.5,
        )

    def test_trace_must_be_monotone(self):
        with pytest.raises(ValueError):
            self._run((TraceEntry(1, 5, 5), TraceEntry(2, 3, 3)), 3)

    def test_final_trace_value_is_best_score(self):
        with pytest.raises(ValueError):
            self._run((TraceEntry(1, 5, 5),), 7)

    def test_eval_indices_are_dense_from_one(self):
        with pytest.raises(ValueError):
            self._run((TraceEntry(1, 5, 5), TraceEntry(3, 6, 6)), 6)

    def test_trace_csv_round_trip(self):
        run = self._run((TraceEntry(1, 5, 5), TraceEntry(2, 9, 9)), 9)
        text = trace_csv(run)
        assert text.splitlines()[0] == "eval_index,candidate_score,best_score"
        assert read_trace_csv(text) == run.trace


class TestLocalOptimize:
    def test_trace_is_monotone_and_budget_respected(self):
        level = load_level("tutorial_1")
        run = local_optimize(level, reference_path("tutorial_1"), local_config(40), FAST)
        assert run.evaluations_used <= 40
        best = 0
        for entry in run.trace:
            assert entry.best_score >= best
            best = entry.best_score
        assert run.best_score == run.trace[-1].best_score

    def test_fixed_point_seed_is_returned_unchanged(self):
        # Hold at the exact target with the shortest legal duration: every
        # single-coordinate move strictly worsens fidelity or the time bonus,
        # so nothing is ever accepted and the climb stops on the step floor.
        level = simple_level(target_trap=ControlSample(0.0, -0.3, 160.0), duration_max=0.5)
        seed = hold_path(-0.3, 160.0, 0.01)
        config = local_config(400, knot_count=8)
        run = local_optimize(level, seed, config, FAST)
        assert run.evaluations_used < 400  # stopped by the step floor
        assert run.best_score == run.trace[0].candidate_score
        assert all(e.candidate_score <= run.best_score for e in run.trace)
        xs = [s.x0 for s in run.best_path.samples]
        assert xs == pytest.approx([-0.3] * 8)
        assert run.best_path.duration == pytest.approx(0.01)

    def test_deterministic(self):
        level = load_level("tutorial_1")
        a = local_optimize(level, reference_path("tutorial_1"), local_config(30), FAST)
        b = local_optimize(level, reference_path("tutorial_1"), local_config(30), FAST)
        assert a.trace == b.trace
        assert a.best_path.samples == b.best_path.samples

    def test_invalid_seed_rejected(self):
        level = simple_level(duration_max=1.0)
        with pytest.raises(PlayValidationError):
            local_optimize(level, hold_path(-0.3, 160.0, 2.0), local_config(10), FAST)

    def test_improves_a_sloppy_seed(self):
        level = load_level("cool_bachelor_1")
        sloppy = transport_path(-0.3, 0.3, 160.0, 0.55)  # full-length, sloshy
        run = local_optimize(level, sloppy, local_config(250), FAST)
        assert run.best_score > run.trace[0].candidate_score

    def test_every_candidate_is_a_valid_play(self, monkeypatch):
        level = load_level("tutorial_1")
        real = optimize_model.evaluate_path

        def checked(lvl, path, sim):
            validate_play(lvl, path)
            return real(lvl, path, sim)

        monkeypatch.setattr(optimize_model, "evaluate_path", checked)
        local_optimize(level, reference_path("tutorial_1"), local_config(40), FAST)


class TestStochasticOptimize:
    def test_same_seed_is_bit_identical(self):
        level = load_level("tutorial_1")
        config = ga_config(80, rng_seed=11)
        a = stochastic_optimize(level, config, FAST)
        b = stochastic_optimize(level, config, FAST)
        assert a.trace == b.trace
        assert a.best_path.samples == b.best_path.samples

    def test_different_seeds_differ(self):
        level = load_level("tutorial_1")
        a = stochastic_optimize(level, ga_config(80, rng_seed=1), FAST)
        b = stochastic_optimize(level, ga_config(80, rng_seed=2), FAST)
        assert a.trace != b.trace

    def test_clone_population_without_mutation_stays_constant(self):
        level = load_level("tutorial_1")
        config = ga_config(70, mutation_scale=0.0, immigrants=0, rng_seed=3)
        seed = reference_path("tutorial_1")
        run = stochastic_optimize(level, config, FAST, init_paths=[seed])
        assert len({e.candidate_score for e in run.trace}) == 1
        assert run.trace[0].best_score == run.trace[-1].best_score

    def test_trace_is_monotone(self):
        level = load_level("tutorial_1")
        run = stochastic_optimize(level, ga_config(70, rng_seed=5), FAST)
        best = 0
        for entry in run.trace:
            assert entry.best_score >= best
            best = entry.best_score

    def test_every_candidate_is_a_valid_play(self, monkeypatch):
        level = load_level("tutorial_1")
        real = optimize_model.evaluate_path

        def checked(lvl, path, sim):
            validate_play(lvl, path)
            return real(lvl, path, sim)

        monkeypatch.setattr(optimize_model, "evaluate_path", checked)
        stochastic_optimize(level, ga_config(70, rng_seed=9), FAST)

    def test_empty_init_paths_rejected(self):
        with pytest.raises(ValueError):
            stochastic_optimize(load_level("tutorial_1"), ga_config(10), FAST, init_paths=[])


class TestHybridOptimize:
    def test_needs_a_seed(self):
        with pytest.raises(ValueError):
            hybrid_optimize(
                load_level("tutorial_1"),
                [],
                OptimizerConfig(family="hybrid", evaluation_budget=10),
                FAST,
            )

    def test_never_worse_than_best_seed(self):
        level = load_level("cool_bachelor_1")
        seeds = [
            transport_path(-0.3, 0.3, 160.0, 0.55),
            reference_path("cool_bachelor_1"),
        ]
        config = OptimizerConfig(family="hybrid", evaluation_budget=60)
        run = hybrid_optimize(level, seeds, config, FAST)
        assert run.best_score >= run.seed_score
        assert run.seed_origin == "reference"

    def test_single_seed_equals_local_with_one_less_evaluation(self):
        level = load_level("tutorial_1")
        seed = reference_path("tutorial_1")
        hybrid_run = hybrid_optimize(
            level, [seed], OptimizerConfig(family="hybrid", evaluation_budget=41), FAST
        )
        local_run = local_optimize(level, seed, local_config(40), FAST)
        assert hybrid_run.best_path.samples == local_run.best_path.samples
        assert hybrid_run.best_score == local_run.best_score
        assert hybrid_run.best_fidelity == local_run.best_fidelity
        # the hybrid trace is the local trace shifted one row down, behind
        # the seed-scoring evaluation
        assert hybrid_run.trace[0].candidate_score == local_run.trace[0].candidate_score
        shifted = [
            TraceEntry(e.eval_index + 1, e.candidate_score, e.best_score)
            for e in local_run.trace
        ]
        assert list(hybrid_run.trace[1:]) == shifted


class TestConvergenceReport:
    def _synthetic_run(self, best_scores, level_id="lab"):
        trace = []
        best = 0
        for i, score in enumerate(best_scores):
            best = max(best, score)
            trace.append(TraceEntry(i + 1, score, best))
        return OptimizationRun(
            level_id=level_id,
            config=local_config(len(best_scores)),
            best_path=hold_path(-0.3, 160.0, 0.5),
            trace=tuple(trace),
            evaluations_used=len(trace),
            best_score=best,
            best_fidelity=0.9,
        )

    def test_one_run_no_players_is_its_trace(self):
        run = self._synthetic_run([100, 300, 200])
        report = convergence_report([run], [])
        assert report.run_curves == ((100, 300, 300),)
        assert report.player_curves == ()
        assert report.crossover == ((),)

    def test_player_strictly_ahead_never_crosses(self):
        run = self._synthetic_run([100, 200, 300])
        report = convergence_report([run], [[900]])
        assert report.crossover == ((None,),)
        assert report.to_dict()["crossover"] == [["none within budget"]]

    def test_plateau_fixture_crosses_at_constructed_index(self):
        # A player lands a good-but-imperfect score instantly and plateaus;
        # the machine grinds upward and first matches them on evaluation 4.
        machine = self._synthetic_run([100, 400, 700, 900, 950])
        report = convergence_report([machine], [[900, 900]])
        assert report.player_curves == ((900, 900, 900, 900, 900),)
        assert report.crossover == ((4,),)

    def test_mixed_levels_rejected(self):
        a = self._synthetic_run([10], level_id="lab")
        b = self._synthetic_run([10], level_id="lab2")
        with pytest.raises(ValueError):
            convergence_report([a, b], [])

    def test_needs_at_least_one_run(self):
        with pytest.raises(ValueError):
            convergence_report([], [[100]])

    def test_empty_player_history_rejected(self):
        run = self._synthetic_run([10])
        with pytest.raises(ValueError):
            convergence_report([run], [[]])

    def test_alignment_note_is_flagged_in_output(self):
        run = self._synthetic_run([10])
        assert "evaluation" in convergence_report([run], []).to_dict()["note"]


class TestDeceptiveToy:
    def test_local_from_straight_seed_stays_in_near_basin(self):
        # The straight play carries everything to the near lobe; single-knot
        # nudges cannot cross the spill moat, so fidelity caps at the lobe's
        # probability weight.
        level = load_level("split_delivery")
        seed = carry_ramp_path(-0.55, 0.0, level.duration_max, 140.0, 140.0)
        run = local_optimize(level, seed, local_config(150), FAST)
        assert run.best_fidelity <= 0.65
