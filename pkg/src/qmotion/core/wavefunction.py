"""Discretized wavefunctions and the measurements taken on them.

Normalization uses the rectangle rule: sum(|psi_i|^2) * dx = 1.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SimConfig
from .potential import PotentialField

NORM_TOL = 1e-8


class GridMismatchError(ValueError):
    """Two states (or a state and a field) live on different grids."""


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex amplitudes on the grid of `config`."""

    amplitudes: np.ndarray
    config: SimConfig

    def __post_init__(self) -> None:
        amp = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amp)
        if amp.shape != (self.config.grid_points,):
            raise ValueError(
                f"state has {amp.shape} amplitudes for a {self.config.grid_points}-point grid"
            )

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.config.dx)

    def density(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def normalized(self) -> "WaveFunction":
        norm = np.sqrt(self.norm_sq())
        if norm == 0.0:
            raise ValueError("cannot normalize the zero state")
        return WaveFunction(self.amplitudes / norm, self.config)

    def require_normalized(self, tol: float = NORM_TOL) -> None:
        if abs(self.norm_sq() - 1.0) > tol:
            raise ValueError(f"state norm^2 = {self.norm_sq()} is off unity by more than {tol}")

    def expectation_position(self) -> float:
        return float(np.sum(self.config.x * self.density()) * self.config.dx)

    def energy(self, potential: PotentialField) -> float:
        """<K> + <V> with the kinetic part evaluated spectrally."""
        _require_same_grid(self.config, potential.config)
        psi_k = np.fft.fft(self.amplitudes)
        weight = np.sum(np.abs(psi_k) ** 2)
        kinetic = float(
            np.sum(0.5 * self.config.hbar**2 * self.config.k**2 / self.config.mass * np.abs(psi_k) ** 2)
            / weight
        )
        dens = self.density()
        pot = float(np.sum(potential.values * dens) / np.sum(dens))
        return kinetic + pot


def _require_same_grid(a: SimConfig, b: SimConfig) -> None:
    if (
        a.grid_points != b.grid_points
        or a.domain_min != b.domain_min
        or a.domain_max != b.domain_max
    ):
        raise GridMismatchError(f"grid mismatch: {a} vs {b}")


def gaussian_state(config: SimConfig, center: float, sigma: float) -> WaveFunction:
    """Unit-norm Gaussian with position spread sigma (density std)."""
    x = config.x
    psi = np.exp(-((x - center) ** 2) / (4.0 * sigma**2)).astype(complex)
    return WaveFunction(psi, config).normalized()


def fidelity(a: WaveFunction, b: WaveFunction) -> float:
    """|<a|b>|^2 with the rectangle-rule inner product."""
    _require_same_grid(a.config, b.config)
    overlap = np.vdot(a.amplitudes, b.amplitudes) * a.config.dx
    return float(np.abs(overlap) ** 2)


def zone_probability(psi: WaveFunction, x_lo: float, x_hi: float) -> float:
    """Probability mass on grid points with x_lo <= x <= x_hi."""
    if not x_hi > x_lo:
        raise ValueError(f"zone must satisfy x_hi > x_lo, got [{x_lo}, {x_hi}]")
    x = psi.config.x
    mask = (x >= x_lo) & (x <= x_hi)
    return float(np.sum(psi.density()[mask]) * psi.config.dx)
