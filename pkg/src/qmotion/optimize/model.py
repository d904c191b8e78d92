"""Shared optimizer types: configuration, run records, and the path genome."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..core import EdgeLeakError, SimConfig
from ..levels.model import Level
from ..levels.reference import carry_ramp_path
from ..levels.scoring import score_play
from ..levels.states import trap_center
from ..paths.model import ControlPath, path_from_arrays

FAMILIES = ("local", "stochastic", "hybrid")
FAMILY_ORIGINS = {"local": "local_opt", "stochastic": "stochastic_opt", "hybrid": "hybrid"}

# A play shorter than 2% of the level budget is never useful: the atom simply
# stays put. Keeping a floor also keeps every decoded genome a valid path.
MIN_DURATION_FRACTION = 0.02
# Hill-climb steps below this fraction of a coordinate's range are treated as
# converged.
MIN_STEP_FRACTION = 1e-3
# Step growth kicks in after this many consecutive acceptances in a run.
ACCEPT_STREAK = 3


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs for one optimization run; family picks which ones matter."""

    family: str
    evaluation_budget: int
    rng_seed: int = 0
    knot_count: int = 32
    # local hill climb: initial step sizes as fractions of each coordinate's
    # full range, the decay applied after a barren cycle, and the growth
    # applied after an acceptance streak.
    step_x0: float = 0.05
    step_amplitude: float = 0.05
    step_time: float = 0.05
    step_decay: float = 0.5
    growth_factor: float = 2.0
    # stochastic GA
    population: int = 32
    elite_fraction: float = 0.125
    mutation_scale: float = 0.05
    mutation_decay: float = 0.99
    mutation_probability: float = 0.1
    crossover_probability: float = 0.7
    immigrants: int = 2

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}, expected one of {FAMILIES}")
        if self.evaluation_budget < 1:
            raise ValueError(f"evaluation_budget must be >= 1, got {self.evaluation_budget}")
        if self.knot_count < 2:
            raise ValueError(f"knot_count must be >= 2, got {self.knot_count}")
        for name in ("step_x0", "step_amplitude", "step_time", "step_decay", "growth_factor"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.step_decay >= 1.0:
            raise ValueError(f"step_decay must be < 1, got {self.step_decay}")
        if self.population < 2:
            raise ValueError(f"population must be >= 2, got {self.population}")
        if not 0.0 < self.elite_fraction < 1.0:
            raise ValueError(f"elite_fraction must be in (0, 1), got {self.elite_fraction}")
        # mutation_scale 0 is allowed: a clone population with zero mutation
        # is a meaningful degenerate configuration.
        if self.mutation_scale < 0:
            raise ValueError(f"mutation_scale must be >= 0, got {self.mutation_scale}")
        if not 0.0 < self.mutation_decay <= 1.0:
            raise ValueError(f"mutation_decay must be in (0, 1], got {self.mutation_decay}")
        for name in ("mutation_probability", "crossover_probability"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {getattr(self, name)}")
        if self.immigrants < 0:
            raise ValueError(f"immigrants must be >= 0, got {self.immigrants}")
        if self.elite_count + self.immigrants >= self.population:
            raise ValueError(
                f"elites ({self.elite_count}) plus immigrants ({self.immigrants}) "
                f"must leave room for offspring in a population of {self.population}"
            )

    @property
    def elite_count(self) -> int:
        return max(1, int(round(self.elite_fraction * self.population)))


@dataclass(frozen=True)
class TraceEntry:
    """One fitness evaluation: 1-based index, candidate score, best so far."""

    eval_index: int
    candidate_score: int
    best_score: int


@dataclass(frozen=True)
class OptimizationRun:
    level_id: str
    config: OptimizerConfig
    best_path: ControlPath
    trace: tuple[TraceEntry, ...]
    evaluations_used: int
    best_score: int
    best_fidelity: float
    seed_origin: str | None = None
    seed_score: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "trace", tuple(self.trace))
        best = -1
        for i, entry in enumerate(self.trace):
            if entry.eval_index != i + 1:
                raise ValueError(f"trace row {i} has eval_index {entry.eval_index}")
            if entry.best_score < best:
                raise ValueError("best_score trace must be non-decreasing")
            best = entry.best_score
        if self.trace and self.trace[-1].best_score != self.best_score:
            raise ValueError("best_score must equal the final trace value")
        if self.evaluations_used != len(self.trace):
            raise ValueError("evaluations_used must match the trace length")


TRACE_HEADER = "eval_index,candidate_score,best_score"


def trace_csv(run: OptimizationRun) -> str:
    lines = [TRACE_HEADER]
    lines += [f"{e.eval_index},{e.candidate_score},{e.best_score}" for e in run.trace]
    return "\n".join(lines) + "\n"


def read_trace_csv(text: str) -> tuple[TraceEntry, ...]:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or lines[0].strip() != TRACE_HEADER:
        raise ValueError(f"expected header {TRACE_HEADER!r}")
    entries = []
    for line in lines[1:]:
        idx, cand, best = (int(part) for part in line.split(","))
        entries.append(TraceEntry(idx, cand, best))
    return tuple(entries)


Fitness = tuple[int, float]

DEAD_FITNESS: Fitness = (0, 0.0)


def evaluate_path(level: Level, path: ControlPath, sim_config: SimConfig) -> Fitness:
    """Score one candidate; an atom lost over the edge counts as zero."""
    try:
        report = score_play(level, path, sim_config)
    except EdgeLeakError:
        return DEAD_FITNESS
    return (report.total_score, report.fidelity)


class BudgetedScorer:
    """Evaluates genomes against a budget, recording the trace and the best.

    All three families funnel every fitness evaluation through one scorer so
    budget accounting, trace rows, best-so-far tracking, and early stopping
    cannot drift apart between them.
    """

    def __init__(
        self,
        level: Level,
        encoding: "PathEncoding",
        sim_config: SimConfig,
        budget: int,
        origin: str,
        early_stop_score: int | None = None,
    ):
        self.level = level
        self.encoding = encoding
        self.sim_config = sim_config
        self.budget = budget
        self.origin = origin
        self.early_stop_score = early_stop_score
        self.trace: list[TraceEntry] = []
        self.best_fitness: Fitness = (-1, -1.0)  # below any real evaluation
        self.best_genome: np.ndarray | None = None

    @property
    def exhausted(self) -> bool:
        return len(self.trace) >= self.budget

    @property
    def stopped(self) -> bool:
        return (
            self.early_stop_score is not None
            and self.best_fitness[0] >= self.early_stop_score
        )

    @property
    def done(self) -> bool:
        return self.exhausted or self.stopped

    def evaluate(self, genome: np.ndarray) -> Fitness:
        if self.exhausted:
            raise RuntimeError("evaluation budget exhausted")
        fitness = evaluate_path(
            self.level, self.encoding.decode(genome, self.origin), self.sim_config
        )
        # The run's best is replaced only on a strict score improvement, so
        # among equal-score candidates the earliest one stands (a seed that
        # is already optimal stays the answer). Fidelity tie-breaking happens
        # in population ranking, not here.
        if fitness[0] > self.best_fitness[0]:
            self.best_fitness = fitness
            self.best_genome = np.array(genome, copy=True)
        self.trace.append(TraceEntry(len(self.trace) + 1, fitness[0], self.best_fitness[0]))
        return fitness


class PathEncoding:
    """Fixed-knot genome for a level: [x0 * K, amplitude * K, duration].

    Knot times are an even grid over the duration, so a genome is a plain
    float vector with box bounds — exactly what both optimizers need.
    """

    def __init__(self, level: Level, knot_count: int):
        self.level = level
        self.knot_count = knot_count
        tw = level.tweezer
        k = knot_count
        self.lower = np.concatenate(
            [np.full(k, tw.x_min), np.zeros(k), [MIN_DURATION_FRACTION * level.duration_max]]
        )
        self.upper = np.concatenate(
            [np.full(k, tw.x_max), np.full(k, tw.depth_max), [level.duration_max]]
        )
        self.range = self.upper - self.lower

    @property
    def size(self) -> int:
        return 2 * self.knot_count + 1

    def clamp(self, genome: np.ndarray) -> np.ndarray:
        return np.clip(genome, self.lower, self.upper)

    def encode(self, path: ControlPath) -> np.ndarray:
        """Resample a path onto the even knot grid."""
        times = np.linspace(0.0, path.duration, self.knot_count)
        x0, amplitude = path.interpolate(times)
        return self.clamp(np.concatenate([x0, amplitude, [path.duration]]))

    def decode(self, genome: np.ndarray, origin: str) -> ControlPath:
        k = self.knot_count
        duration = float(genome[-1])
        times = np.linspace(0.0, duration, k)
        return path_from_arrays(times, genome[:k], genome[k : 2 * k], origin=origin)

    def start_anchor(self) -> tuple[float, float]:
        """Where a candidate path naturally begins: the initial trap.

        A tweezer start begins at that parked position and depth; a static
        well start begins over the well with the tweezer off.
        """
        trap = self.level.initial_trap
        if isinstance(trap, int):
            return trap_center(self.level, trap), 0.0
        return trap.x0, trap.amplitude

    def random_primitive(self, rng: np.random.Generator) -> np.ndarray:
        """A smooth carry-and-ramp with random endpoints.

        Random knot soup almost always throws the atom out of the box, so the
        population seeds with physical moves: glide from the initial trap to a
        random position while ramping the depth to a random endpoint.
        """
        tw = self.level.tweezer
        x_start, a_start = self.start_anchor()
        x_end = rng.uniform(tw.x_min, tw.x_max)
        depth_end = rng.uniform(0.0, tw.depth_max)
        duration = rng.uniform(0.4, 1.0) * self.level.duration_max
        path = carry_ramp_path(
            x_start, x_end, duration, a_start, depth_end, n_samples=self.knot_count
        )
        return self.encode(path)


def run_record(
    level: Level,
    config: OptimizerConfig,
    encoding: PathEncoding,
    best_genome: np.ndarray,
    best_fitness: Fitness,
    trace: list[TraceEntry],
    seed_origin: str | None = None,
    seed_score: int | None = None,
) -> OptimizationRun:
    return OptimizationRun(
        level_id=level.id,
        config=config,
        best_path=encoding.decode(best_genome, FAMILY_ORIGINS[config.family]),
        trace=tuple(trace),
        evaluations_used=len(trace),
        best_score=best_fitness[0],
        best_fidelity=best_fitness[1],
        seed_origin=seed_origin,
        seed_score=seed_score,
    )
