"""Dynamical invariants: tunneling period against the eigensolver, sloshing cost."""
from __future__ import annotations

import numpy as np
import pytest

from helpers import measure_oscillation_period
from qmotion.core import (
    ControlSample,
    PotentialField,
    SimConfig,
    TweezerSpec,
    WaveFunction,
    eigenstates,
    evolve,
    gaussian_well,
    ground_state,
    static_potential_at,
    tweezer_potential,
    zone_probability,
)


def double_well(config: SimConfig, separation: float = 0.34) -> PotentialField:
    values = gaussian_well(config, -separation / 2, 160.0, 0.08) + gaussian_well(
        config, separation / 2, 160.0, 0.08
    )
    return PotentialField(values, config)


def test_tunneling_period_matches_eigensolver_within_two_percent():
    # Dual route: period measured from split-operator dynamics vs 2*pi/dE
    # from the finite-difference eigensolver.
    config = SimConfig()
    well = double_well(config)
    pairs = eigenstates(well, config, 2)
    gap = pairs[1].energy - pairs[0].energy
    predicted = 2 * np.pi / (config.hbar * gap)

    localized = WaveFunction(
        (pairs[0].state.amplitudes + pairs[1].state.amplitudes) / np.sqrt(2.0), config
    ).normalized()
    traj = evolve(localized, static_potential_at(well), 2.2 * predicted, config, sample_stride=10)
    right_mass = np.array([zone_probability(traj.state_at(i), 0.0, 1.0) for i in range(len(traj))])
    assert right_mass.max() - right_mass.min() > 0.9  # the mass really moves between wells
    measured = measure_oscillation_period(traj.times, right_mass)
    assert measured == pytest.approx(predicted, rel=0.02)


def test_sloshing_excess_energy_monotone_in_displacement():
    # An instantaneous tweezer jump by dx leaves the atom with kinetic
    # excitation; the excess over the moved trap's ground energy must be
    # positive and non-decreasing over dx in (0, 4*sigma).
    config = SimConfig()
    spec = TweezerSpec(sigma=0.05, depth_max=160.0)
    home = tweezer_potential(spec, ControlSample(0.0, 0.0, 160.0), config)
    psi = ground_state(home, config)
    ground_energy = psi.energy(home)  # displacement does not change the trap's own E0

    previous = 0.0
    for dx in np.linspace(0.01, 4 * spec.sigma, 25):
        moved = tweezer_potential(spec, ControlSample(0.0, float(dx), 160.0), config)
        excess = psi.energy(moved) - ground_energy
        assert excess > 0.0
        assert excess >= previous - 1e-12
        previous = excess
