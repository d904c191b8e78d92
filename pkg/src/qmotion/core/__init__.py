"""Quantum engine: grid, potentials, states, stationary solvers, propagation."""
from .grid import SimConfig
from .potential import (
    BoundsError,
    ControlSample,
    PotentialField,
    TweezerSpec,
    gaussian_well,
    harmonic_potential,
    tweezer_potential,
)
from .wavefunction import (
    GridMismatchError,
    WaveFunction,
    fidelity,
    gaussian_state,
    zone_probability,
)
from .stationary import ConfinementError, ConvergenceError, EigenPair, eigenstates, ground_state
from .evolve import (
    EDGE_GUARD_POINTS,
    EDGE_LEAK_LIMIT,
    EdgeLeakError,
    Trajectory,
    evolve,
    static_potential_at,
    step_stream,
)

__all__ = [
    "SimConfig",
    "BoundsError",
    "ControlSample",
    "PotentialField",
    "TweezerSpec",
    "gaussian_well",
    "harmonic_potential",
    "tweezer_potential",
    "GridMismatchError",
    "WaveFunction",
    "fidelity",
    "gaussian_state",
    "zone_probability",
    "ConfinementError",
    "ConvergenceError",
    "EigenPair",
    "eigenstates",
    "ground_state",
    "EDGE_GUARD_POINTS",
    "EDGE_LEAK_LIMIT",
    "EdgeLeakError",
    "Trajectory",
    "evolve",
    "static_potential_at",
    "step_stream",
]
