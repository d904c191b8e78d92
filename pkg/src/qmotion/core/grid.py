"""Uniform 1D grid and discretization parameters.

Everything runs in dimensionless units with hbar = m = 1. Positions live on
x_i = domain_min + i * dx with periodic wrap, so the matching momentum grid is
k = 2*pi*fftfreq(N, dx).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class SimConfig:
    """Grid and stepping parameters shared by every simulation call."""

    domain_min: float = -1.0
    domain_max: float = 1.0
    grid_points: int = 256
    dt: float = 1e-4
    hbar: float = 1.0
    mass: float = 1.0

    def __post_init__(self) -> None:
        n = self.grid_points
        if n < 16 or (n & (n - 1)) != 0:
            raise ValueError(f"grid_points must be a power of two >= 16, got {n}")
        if not self.domain_max > self.domain_min:
            raise ValueError(
                f"domain_max must exceed domain_min, got [{self.domain_min}, {self.domain_max}]"
            )
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")

    @property
    def dx(self) -> float:
        return (self.domain_max - self.domain_min) / self.grid_points

    @property
    def x(self) -> np.ndarray:
        return _grid_arrays(self)[0]

    @property
    def k(self) -> np.ndarray:
        """Angular wavenumbers matching numpy's FFT ordering."""
        return _grid_arrays(self)[1]


@lru_cache(maxsize=128)
def _grid_arrays(config: SimConfig) -> tuple[np.ndarray, np.ndarray]:
    x = config.domain_min + config.dx * np.arange(config.grid_points)
    k = 2.0 * np.pi * np.fft.fftfreq(config.grid_points, d=config.dx)
    x.setflags(write=False)
    k.setflags(write=False)
    return x, k
