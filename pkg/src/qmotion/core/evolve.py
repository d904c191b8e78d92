"""Real-time propagation with the split-operator spectral method.

One step from t to t+dt applies a half kick exp(-i V dt / 2), a full kinetic
drift exp(-i k^2 dt / 2) in frequency space, and a second half kick, with the
potential sampled at the step midpoint. Boundaries are periodic, so the
stepper refuses to continue once noticeable probability reaches the edge of
the box: wrap-around there would silently corrupt the physics.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np

from .grid import SimConfig
from .potential import PotentialField
from .wavefunction import WaveFunction, _require_same_grid

EDGE_GUARD_POINTS = 5
EDGE_LEAK_LIMIT = 1e-3


class EdgeLeakError(RuntimeError):
    """Probability piled up against the box boundary during propagation."""

    def __init__(self, t: float, leaked: float):
        super().__init__(
            f"probability {leaked:.3e} within {EDGE_GUARD_POINTS} grid points of the "
            f"boundary at t={t:.6f}; the box is too small for this motion"
        )
        self.t = t
        self.leaked = leaked


@dataclass(frozen=True)
class Trajectory:
    """Stride-sampled history of a propagation, including both endpoints."""

    times: np.ndarray
    states: np.ndarray  # (n_samples, grid_points) complex
    config: SimConfig

    @property
    def final(self) -> WaveFunction:
        return WaveFunction(self.states[-1], self.config)

    def state_at(self, index: int) -> WaveFunction:
        return WaveFunction(self.states[index], self.config)

    def __len__(self) -> int:
        return len(self.times)


def _check_edges(psi: np.ndarray, dx: float, t: float) -> None:
    g = EDGE_GUARD_POINTS
    leaked = (np.sum(np.abs(psi[:g]) ** 2) + np.sum(np.abs(psi[-g:]) ** 2)) * dx
    if leaked > EDGE_LEAK_LIMIT:
        raise EdgeLeakError(t, float(leaked))


def step_stream(
    psi0: WaveFunction,
    potential_at: Callable[[float], PotentialField],
    duration: float,
    config: SimConfig,
    sample_stride: int = 10,
) -> Iterator[tuple[float, np.ndarray]]:
    """Yield (t, amplitudes) at t=0, every sample_stride-th step, and t=duration.

    The yielded array is a live view; callers that keep it must copy. Edge
    leakage is checked at every yielded sample.
    """
    if duration < 0:
        raise ValueError(f"duration must be >= 0, got {duration}")
    if sample_stride < 1:
        raise ValueError(f"sample_stride must be >= 1, got {sample_stride}")
    _require_same_grid(psi0.config, config)
    psi0.require_normalized()

    dt = config.dt
    n_steps = int(round(duration / dt))
    psi = psi0.amplitudes.astype(complex)
    exp_k = np.exp(-0.5j * config.hbar * dt * config.k**2 / config.mass)
    dx = config.dx

    _check_edges(psi, dx, 0.0)
    yield 0.0, psi
    for step in range(n_steps):
        t_mid = (step + 0.5) * dt
        v = potential_at(t_mid)
        _require_same_grid(v.config, config)
        half_kick = np.exp(-0.5j * dt * v.values / config.hbar)
        psi = half_kick * psi
        psi = np.fft.ifft(exp_k * np.fft.fft(psi))
        psi = half_kick * psi
        t_now = (step + 1) * dt
        if step == n_steps - 1 or (step + 1) % sample_stride == 0:
            _check_edges(psi, dx, t_now)
            yield t_now, psi


def evolve(
    psi0: WaveFunction,
    potential_at: Callable[[float], PotentialField],
    duration: float,
    config: SimConfig,
    sample_stride: int = 10,
) -> Trajectory:
    """Propagate psi0 under a (possibly time-dependent) potential for `duration`."""
    times = []
    states = []
    for t, psi in step_stream(psi0, potential_at, duration, config, sample_stride):
        times.append(t)
        states.append(psi.copy())
    return Trajectory(np.array(times), np.array(states), config)


def static_potential_at(potential: PotentialField) -> Callable[[float], PotentialField]:
    """Adapter for time-independent landscapes."""
    return lambda t: potential
