"""Machine-vs-player convergence comparison."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import OptimizationRun

ALIGNMENT_NOTE = "one optimizer evaluation is aligned with one player play"


def best_so_far(scores: Sequence[int]) -> tuple[int, ...]:
    best = None
    curve = []
    for s in scores:
        best = s if best is None or s > best else best
        curve.append(best)
    return tuple(curve)


def extend_flat(curve: Sequence[int], n: int) -> tuple[int, ...]:
    if not curve:
        raise ValueError("cannot extend an empty curve")
    return tuple(curve) + (curve[-1],) * (n - len(curve))


def crossover_index(machine: Sequence[int], player: Sequence[int]) -> int | None:
    """First 1-based n where the machine's best matches or beats the player's.

    Both curves must already be aligned to the same length; returns None when
    the player stays strictly ahead for the whole budget.
    """
    for i, (m, p) in enumerate(zip(machine, player)):
        if m >= p:
            return i + 1
    return None


@dataclass(frozen=True)
class ConvergenceReport:
    level_id: str
    n_evaluations: int
    run_curves: tuple[tuple[int, ...], ...]
    player_curves: tuple[tuple[int, ...], ...]
    crossover: tuple[tuple[int | None, ...], ...]  # [run][player]
    note: str = ALIGNMENT_NOTE

    def to_dict(self) -> dict:
        return {
            "level_id": self.level_id,
            "n_evaluations": self.n_evaluations,
            "run_curves": [list(c) for c in self.run_curves],
            "player_curves": [list(c) for c in self.player_curves],
            "crossover": [
                ["none within budget" if x is None else x for x in row]
                for row in self.crossover
            ],
            "note": self.note,
        }


def convergence_report(
    runs: Sequence[OptimizationRun],
    player_histories: Sequence[Sequence[int]],
    level_id: str | None = None,
) -> ConvergenceReport:
    """Align best-so-far curves of runs and players on a shared play axis.

    `player_histories` holds each player's raw score after every play, in
    play order. Shorter curves are extended flat: a player who stops playing
    keeps their high score.
    """
    if not runs:
        raise ValueError("need at least one optimization run")
    levels = {run.level_id for run in runs}
    if level_id is not None:
        levels.add(level_id)
    if len(levels) > 1:
        raise ValueError(f"runs reference mixed levels: {sorted(levels)}")
    return convergence_report_from_curves(
        [[e.best_score for e in run.trace] for run in runs],
        player_histories,
        level_id=levels.pop(),
    )


def convergence_report_from_curves(
    machine_scores: Sequence[Sequence[int]],
    player_histories: Sequence[Sequence[int]],
    level_id: str = "unknown",
) -> ConvergenceReport:
    """Build the report from raw per-evaluation score sequences (e.g. the
    best_score column of exported trace files)."""
    if not machine_scores:
        raise ValueError("need at least one optimization run")
    for curve in machine_scores:
        if not curve:
            raise ValueError("run traces must contain at least one evaluation")
    for history in player_histories:
        if not history:
            raise ValueError("player histories must contain at least one play")

    machine = [best_so_far(curve) for curve in machine_scores]
    players = [best_so_far(h) for h in player_histories]
    n = max(len(c) for c in machine + players)
    machine = [extend_flat(c, n) for c in machine]
    players = [extend_flat(c, n) for c in players]
    crossover = tuple(
        tuple(crossover_index(m, p) for p in players) for m in machine
    )
    return ConvergenceReport(
        level_id=level_id,
        n_evaluations=n,
        run_curves=tuple(machine),
        player_curves=tuple(players),
        crossover=crossover,
    )
