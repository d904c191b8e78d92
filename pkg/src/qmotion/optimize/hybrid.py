"""Seeded optimization: score recorded plays, then climb from the best one."""
from __future__ import annotations

from typing import Sequence

from ..core import SimConfig
from ..levels.model import Level
from ..levels.scoring import validate_play
from ..paths.model import ControlPath
from .local import climb
from .model import BudgetedScorer, OptimizationRun, OptimizerConfig, PathEncoding, run_record


def hybrid_optimize(
    level: Level,
    seeds: Sequence[ControlPath],
    config: OptimizerConfig,
    sim_config: SimConfig | None = None,
    early_stop_score: int | None = None,
) -> OptimizationRun:
    """Score every seed (on the knot grid the climb uses), refine the best.

    Seed evaluations count against the same budget as the climb, and the
    climb starts by re-scoring its seed, so a single-seed run is exactly a
    local run with one evaluation less to spend.
    """
    if not seeds:
        raise ValueError("hybrid optimization needs at least one seed play")
    sim_config = sim_config if sim_config is not None else SimConfig()
    for seed in seeds:
        validate_play(level, seed)
    encoding = PathEncoding(level, config.knot_count)
    scorer = BudgetedScorer(
        level, encoding, sim_config, config.evaluation_budget, "hybrid", early_stop_score
    )

    best_index = None
    best_fitness = None
    genomes = [encoding.encode(seed) for seed in seeds]
    for j, genome in enumerate(genomes):
        if scorer.done:
            break
        fitness = scorer.evaluate(genome)
        if best_fitness is None or fitness > best_fitness:
            best_index, best_fitness = j, fitness

    seed_origin = seeds[best_index].origin
    seed_score = best_fitness[0]
    if not scorer.done:
        climb(scorer, config, genomes[best_index])
    return run_record(
        level,
        config,
        encoding,
        scorer.best_genome,
        scorer.best_fitness,
        scorer.trace,
        seed_origin=seed_origin,
        seed_score=seed_score,
    )
