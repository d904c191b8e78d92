"""Generational genetic search over fixed-knot paths."""
from __future__ import annotations

from itertools import cycle, islice
from typing import Sequence

import numpy as np

from ..core import SimConfig
from ..levels.model import Level
from ..levels.scoring import validate_play
from ..paths.model import ControlPath
from .model import (
    BudgetedScorer,
    Fitness,
    OptimizationRun,
    OptimizerConfig,
    PathEncoding,
    run_record,
)


def _rank(fitness: list[Fitness]) -> list[int]:
    """Population indices from fittest to weakest; ties keep earlier index."""
    return sorted(range(len(fitness)), key=lambda j: (-fitness[j][0], -fitness[j][1], j))


def _tournament(rng: np.random.Generator, fitness: list[Fitness], size: int = 3) -> int:
    contestants = rng.integers(0, len(fitness), size=size)
    best = int(contestants[0])
    for c in contestants[1:]:
        c = int(c)
        if (fitness[c][0], fitness[c][1], -c) > (fitness[best][0], fitness[best][1], -best):
            best = c
    return best


def stochastic_optimize(
    level: Level,
    config: OptimizerConfig,
    sim_config: SimConfig | None = None,
    init_paths: Sequence[ControlPath] | None = None,
    early_stop_score: int | None = None,
) -> OptimizationRun:
    """Elitist GA: tournament parents, blend crossover, clamped Gaussian noise.

    The opening population comes from smooth random carry-and-ramp moves
    (random knots almost always fling the atom out of the box); passing
    `init_paths` instead seeds it with given plays, cycled to fill — which is
    also how a degenerate all-clones population is constructed. Each
    generation keeps the elites, breeds offspring, and replaces the tail with
    fresh random immigrants so diversity never collapses.
    """
    sim_config = sim_config if sim_config is not None else SimConfig()
    encoding = PathEncoding(level, config.knot_count)
    rng = np.random.default_rng(config.rng_seed)
    scorer = BudgetedScorer(
        level,
        encoding,
        sim_config,
        config.evaluation_budget,
        "stochastic_opt",
        early_stop_score,
    )

    population = config.population
    if init_paths is not None:
        if not init_paths:
            raise ValueError("init_paths must not be empty when given")
        for path in init_paths:
            validate_play(level, path)
        genomes = [encoding.encode(p) for p in islice(cycle(init_paths), population)]
    else:
        genomes = [encoding.random_primitive(rng) for _ in range(population)]

    fitness: list[Fitness | None] = [None] * population
    for j in range(population):
        if scorer.done:
            break
        fitness[j] = scorer.evaluate(genomes[j])

    elite_count = config.elite_count
    offspring_count = population - elite_count - config.immigrants
    generation = 0
    while not scorer.done:
        generation += 1
        noise = config.mutation_scale * config.mutation_decay**generation * encoding.range
        order = _rank(fitness)  # type: ignore[arg-type]  # fully evaluated here
        elites = [genomes[j] for j in order[:elite_count]]
        elite_fitness = [fitness[j] for j in order[:elite_count]]

        children = []
        for _ in range(offspring_count):
            a = _tournament(rng, fitness)  # type: ignore[arg-type]
            b = _tournament(rng, fitness)  # type: ignore[arg-type]
            if rng.uniform() < config.crossover_probability:
                blend = rng.uniform(size=encoding.size)
                child = blend * genomes[a] + (1.0 - blend) * genomes[b]
            else:
                child = np.array(genomes[a], copy=True)
            mutate = rng.uniform(size=encoding.size) < config.mutation_probability
            hits = int(mutate.sum())
            if hits and config.mutation_scale > 0:
                child[mutate] += rng.normal(size=hits) * noise[mutate]
            children.append(encoding.clamp(child))
        immigrants = [encoding.random_primitive(rng) for _ in range(config.immigrants)]

        genomes = elites + children + immigrants
        fitness = list(elite_fitness) + [None] * (offspring_count + config.immigrants)
        for j in range(elite_count, population):
            if scorer.done:
                break
            fitness[j] = scorer.evaluate(genomes[j])

    return run_record(
        level, config, encoding, scorer.best_genome, scorer.best_fitness, scorer.trace
    )
