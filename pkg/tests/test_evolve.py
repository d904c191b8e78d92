"""Split-operator propagation: conservation laws, oracle equivalence, edge guard."""
from __future__ import annotations

import numpy as np
import pytest

from qmotion.core import (
    ControlSample,
    EdgeLeakError,
    PotentialField,
    SimConfig,
    TweezerSpec,
    WaveFunction,
    eigenstates,
    evolve,
    fidelity,
    gaussian_state,
    gaussian_well,
    ground_state,
    harmonic_potential,
    static_potential_at,
    tweezer_potential,
)


def exact_propagator_oracle(v: np.ndarray, config: SimConfig, t: float) -> np.ndarray:
    """Brute-force matrix exponential of H = F^-1 diag(k^2/2) F + diag(V).

    Built from a dense DFT matrix and a full eigendecomposition: shares no code
    with the split-operator stepper.
    """
    n = config.grid_points
    f = np.fft.fft(np.eye(n), axis=0)
    f_inv = np.fft.ifft(np.eye(n), axis=0)
    kinetic = f_inv @ np.diag(0.5 * config.hbar**2 * config.k**2 / config.mass) @ f
    h = kinetic + np.diag(v)
    h = (h + h.conj().T) / 2.0
    energies, vectors = np.linalg.eigh(h)
    return vectors @ np.diag(np.exp(-1j * energies * t / config.hbar)) @ vectors.conj().T


def test_norm_conserved_over_ten_thousand_steps():
    config = SimConfig()
    well = harmonic_potential(config, omega=50.0)
    psi = gaussian_state(config, 0.1, 0.05)
    traj = evolve(psi, static_potential_at(well), 10_000 * config.dt, config, sample_stride=100)
    for i in range(len(traj)):
        assert abs(traj.state_at(i).norm_sq() - 1.0) < 1e-8


def test_energy_drift_below_1e4_over_ten_thousand_steps():
    config = SimConfig()
    well = harmonic_potential(config, omega=50.0)
    psi = gaussian_state(config, 0.1, 0.05)
    e0 = psi.energy(well)
    traj = evolve(psi, static_potential_at(well), 10_000 * config.dt, config, sample_stride=500)
    for i in range(len(traj)):
        drift = abs(traj.state_at(i).energy(well) - e0) / abs(e0)
        assert drift < 1e-4


def test_eigenstate_is_stationary():
    config = SimConfig()
    well = tweezer_potential(TweezerSpec(), ControlSample(0.0, 0.0, 160.0), config)
    psi = ground_state(well, config)
    traj = evolve(psi, static_potential_at(well), 0.05, config, sample_stride=100)
    assert fidelity(traj.final, psi) > 1.0 - 1e-6


def test_split_operator_matches_matrix_exponential_oracle():
    config = SimConfig(grid_points=64)
    values = gaussian_well(config, -0.1, 80.0, 0.1)
    well = PotentialField(values, config)
    psi = gaussian_state(config, -0.1, 0.08)
    duration = 0.05
    traj = evolve(psi, static_potential_at(well), duration, config, sample_stride=100)
    u = exact_propagator_oracle(values, config, duration)
    expected = WaveFunction(u @ psi.amplitudes, config)
    assert fidelity(traj.final, expected) > 1.0 - 1e-6


def test_time_dependent_drive_differs_from_static():
    config = SimConfig()
    spec = TweezerSpec()
    start = ControlSample(0.0, 0.0, 160.0)
    psi = ground_state(tweezer_potential(spec, start, config), config)

    def moving(t: float) -> PotentialField:
        return tweezer_potential(spec, ControlSample(t, 0.5 * t, 160.0), config)

    traj = evolve(psi, moving, 0.2, config, sample_stride=200)
    # The trap slid to x0 = 0.1; a gentle slide carries the atom with it.
    assert traj.final.expectation_position() == pytest.approx(0.1, abs=0.02)


def test_trajectory_sampling_includes_endpoints_and_stride():
    config = SimConfig()
    well = harmonic_potential(config, omega=50.0)
    psi = gaussian_state(config, 0.0, 0.1)
    traj = evolve(psi, static_potential_at(well), 100 * config.dt, config, sample_stride=30)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(100 * config.dt)
    assert np.allclose(traj.times[1:4], [30 * config.dt, 60 * config.dt, 90 * config.dt])


def test_edge_leak_raises():
    config = SimConfig()
    # A free wavepacket with momentum slams into the boundary.
    x = config.x
    psi = WaveFunction(
        np.exp(-((x - 0.5) ** 2) / (4 * 0.05**2)) * np.exp(1j * 60.0 * x), config
    ).normalized()
    flat = PotentialField(np.zeros(config.grid_points), config)
    with pytest.raises(EdgeLeakError):
        evolve(psi, static_potential_at(flat), 0.05, config, sample_stride=10)


def test_evolution_is_deterministic():
    config = SimConfig()
    well = harmonic_potential(config, omega=50.0)
    psi = gaussian_state(config, 0.12, 0.06)
    a = evolve(psi, static_potential_at(well), 0.02, config, sample_stride=50)
    b = evolve(psi, static_potential_at(well), 0.02, config, sample_stride=50)
    assert np.array_equal(a.states, b.states)
