"""Potentials and trap ground states for a level.

The initial and target states of a level are ground states of the full
landscape the trap creates: static features plus the parked tweezer when the
trap is a tweezer sample, the static features alone when it is a well index.
For nearly degenerate double wells the relaxation is seeded over the trap's
own center, so it settles into the localized state belonging to that trap.

Ground states are cached per (grid, potential, seed) because every play of a
level needs the same pair.
"""
from __future__ import annotations

from typing import Callable

import numpy as np

from ..core.grid import SimConfig
from ..core.potential import ControlSample, PotentialField, gaussian_well, tweezer_potential
from ..core.stationary import ground_state
from ..core.wavefunction import WaveFunction, gaussian_state
from ..paths.model import ControlPath
from .model import Level

GROUND_STATE_TOL = 1e-10

_state_cache: dict[tuple, WaveFunction] = {}


def static_landscape(level: Level, config: SimConfig) -> PotentialField:
    """Sum of the level's fixed wells and barriers (zero when there are none)."""
    values = np.zeros(config.grid_points)
    for well in level.static_wells:
        values = values + gaussian_well(config, well.center, well.depth, well.width)
    return PotentialField(values, config)


def trap_potential(level: Level, trap: ControlSample | int, config: SimConfig) -> PotentialField:
    """Full landscape with the trap in place."""
    static = static_landscape(level, config)
    if isinstance(trap, int):
        return static
    tweezer = tweezer_potential(level.tweezer, trap, config)
    return PotentialField(static.values + tweezer.values, config)


def trap_center(level: Level, trap: ControlSample | int) -> float:
    return level.static_wells[trap].center if isinstance(trap, int) else trap.x0


def _seed_state(level: Level, trap: ControlSample | int, config: SimConfig) -> WaveFunction:
    """Harmonic-width Gaussian over the trap center to localize the relaxation."""
    if isinstance(trap, int):
        well = level.static_wells[trap]
        depth, width = abs(well.depth), well.width
    else:
        depth, width = trap.amplitude, level.tweezer.sigma
    span = config.domain_max - config.domain_min
    if depth > 0:
        omega = np.sqrt(depth / config.mass) / width
        sigma = np.sqrt(config.hbar / (2.0 * config.mass * omega))
    else:
        sigma = span / 16.0
    sigma = float(min(max(sigma, 2.0 * config.dx), span / 8.0))
    return gaussian_state(config, trap_center(level, trap), sigma)


def trap_ground_state(level: Level, trap: ControlSample | int, config: SimConfig) -> WaveFunction:
    potential = trap_potential(level, trap, config)
    seed = _seed_state(level, trap, config)
    key = (config, potential.values.tobytes(), seed.amplitudes.tobytes())
    cached = _state_cache.get(key)
    if cached is None:
        cached = ground_state(potential, config, tol=GROUND_STATE_TOL, guess=seed)
        _state_cache[key] = cached
    return cached


def initial_state(level: Level, config: SimConfig) -> WaveFunction:
    return trap_ground_state(level, level.initial_trap, config)


def target_state(level: Level, config: SimConfig) -> WaveFunction:
    return trap_ground_state(level, level.target_trap, config)


def landscape_at(level: Level, path: ControlPath, config: SimConfig) -> Callable[[float], PotentialField]:
    """Time-dependent potential of a play: static features plus the moving tweezer."""
    static = static_landscape(level, config).values
    spec = level.tweezer

    def potential_at(t: float) -> PotentialField:
        x0, amplitude = path.interpolate(t)
        sample = ControlSample(t=max(float(t), 0.0), x0=float(x0), amplitude=float(amplitude))
        tweezer = tweezer_potential(spec, sample, config)
        return PotentialField(static + tweezer.values, config)

    return potential_at
