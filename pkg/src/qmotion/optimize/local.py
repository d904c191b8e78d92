"""Deterministic coordinate-wise hill climb over a fixed-knot path."""
from __future__ import annotations

import numpy as np

from ..core import SimConfig
from ..levels.model import Level
from ..levels.scoring import validate_play
from ..paths.model import ControlPath
from .model import (
    ACCEPT_STREAK,
    MIN_STEP_FRACTION,
    BudgetedScorer,
    OptimizationRun,
    OptimizerConfig,
    PathEncoding,
    run_record,
)


def climb(scorer: BudgetedScorer, config: OptimizerConfig, genome: np.ndarray) -> None:
    """Hill-climb from `genome`, spending whatever budget the scorer has left.

    One coordinate at a time (each knot's position, each knot's depth, then
    the overall duration), a step is tried in each direction; an accepted
    step is repeated in the same direction until it stops paying. A full
    cycle without a single acceptance shrinks all steps; a streak of
    acceptances grows the moving step back toward its initial size. The climb
    first re-evaluates its own starting point so every run's trace starts
    from the seed's score.

    A move is accepted only when the integer score strictly improves — the
    quantity players see. Fidelity still breaks ties when the scorer picks
    the overall best path, but it never drives the walk, so a seed that is
    already score-optimal is a true fixed point.
    """
    encoding = scorer.encoding
    if scorer.done:
        return
    current = np.array(genome, copy=True)
    current_fitness = scorer.evaluate(current)

    fractions = {"x": config.step_x0, "A": config.step_amplitude, "T": config.step_time}
    initial_fractions = dict(fractions)
    k = encoding.knot_count
    coordinates = (
        [("x", i) for i in range(k)] + [("A", k + i) for i in range(k)] + [("T", 2 * k)]
    )

    while not scorer.done and max(fractions.values()) >= MIN_STEP_FRACTION:
        accepted_in_cycle = False
        for kind, index in coordinates:
            if scorer.done:
                break
            for sign in (1.0, -1.0):
                moved = False
                streak = 0
                while not scorer.done:
                    step = sign * fractions[kind] * encoding.range[index]
                    candidate = np.array(current, copy=True)
                    candidate[index] += step
                    candidate = encoding.clamp(candidate)
                    if candidate[index] == current[index]:
                        break  # pinned against a bound
                    fitness = scorer.evaluate(candidate)
                    if fitness[0] > current_fitness[0]:
                        current, current_fitness = candidate, fitness
                        accepted_in_cycle = True
                        moved = True
                        streak += 1
                        if streak % ACCEPT_STREAK == 0:
                            fractions[kind] = min(
                                initial_fractions[kind],
                                fractions[kind] * config.growth_factor,
                            )
                    else:
                        break
                if moved:
                    break  # the opposite direction would just walk back
        if not accepted_in_cycle:
            for kind in fractions:
                fractions[kind] *= config.step_decay


def local_optimize(
    level: Level,
    seed: ControlPath,
    config: OptimizerConfig,
    sim_config: SimConfig | None = None,
    early_stop_score: int | None = None,
) -> OptimizationRun:
    sim_config = sim_config if sim_config is not None else SimConfig()
    validate_play(level, seed)
    encoding = PathEncoding(level, config.knot_count)
    scorer = BudgetedScorer(
        level, encoding, sim_config, config.evaluation_budget, "local_opt", early_stop_score
    )
    climb(scorer, config, encoding.encode(seed))
    return run_record(
        level, config, encoding, scorer.best_genome, scorer.best_fitness, scorer.trace
    )
