"""Stationary states: imaginary-time ground states and a finite-difference eigensolver.

The two routes are deliberately different discretizations. Imaginary time
reuses the spectral split-operator factors (so it converges to the ground
state of the same Hamiltonian the real-time stepper propagates), while
eigenstates() builds a second-order central-difference Hamiltonian with
hard-wall boundaries and hands it to LAPACK. Localized states agree between
the two to O(dx^2).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .grid import SimConfig
from .potential import PotentialField
from .wavefunction import WaveFunction, _require_same_grid

GROUND_DT = 1e-4
GROUND_MAX_STEPS = 2_000_000


class ConvergenceError(RuntimeError):
    """Imaginary time failed to converge within the step budget."""

    def __init__(self, message: str, last_energy: float):
        super().__init__(message)
        self.last_energy = last_energy


class ConfinementError(ValueError):
    """The potential has no well below its far-field value."""


def _require_confining(potential: PotentialField) -> None:
    v = potential.values
    far_field = min(v[0], v[-1])
    if not v.min() < far_field:
        raise ConfinementError(
            "potential is not confining: no well below the far-field value "
            f"(min {v.min()}, edges {v[0]}, {v[-1]})"
        )


def ground_state(
    potential: PotentialField,
    config: SimConfig,
    tol: float = 1e-10,
    guess: WaveFunction | None = None,
    dt_im: float = GROUND_DT,
    max_steps: int = GROUND_MAX_STEPS,
) -> WaveFunction:
    """Lowest state by imaginary-time split-operator propagation.

    Renormalizes every step and stops once the relative energy change per
    step drops below tol. Raises ConvergenceError (carrying the last energy)
    if the step budget runs out first.
    """
    _require_same_grid(potential.config, config)
    _require_confining(potential)

    x = config.x
    v = potential.values
    if guess is not None:
        _require_same_grid(guess.config, config)
        psi = guess.amplitudes.astype(complex)
    else:
        # Start from a broad bump over the deepest well so every parity is populated.
        center = x[np.argmin(v)]
        width = (config.domain_max - config.domain_min) / 16.0
        psi = np.exp(-((x - center) ** 2) / (2.0 * width**2)) + 0.0j
    psi = psi / (np.linalg.norm(psi) * np.sqrt(config.dx))

    exp_v_half = np.exp(-0.5 * dt_im * v / config.hbar)
    exp_k = np.exp(-0.5 * dt_im * config.hbar * config.k**2 / config.mass)

    energy = WaveFunction(psi, config).energy(potential)
    for _ in range(max_steps):
        psi = exp_v_half * psi
        psi = np.fft.ifft(exp_k * np.fft.fft(psi))
        psi = exp_v_half * psi
        psi = psi / (np.linalg.norm(psi) * np.sqrt(config.dx))
        new_energy = WaveFunction(psi, config).energy(potential)
        scale = max(abs(new_energy), 1e-12)
        done = abs(new_energy - energy) / scale < tol
        energy = new_energy
        if done:
            return WaveFunction(psi, config)
    raise ConvergenceError(
        f"imaginary time did not converge within {max_steps} steps (tol {tol})",
        last_energy=energy,
    )


@dataclass(frozen=True)
class EigenPair:
    energy: float
    state: WaveFunction


def eigenstates(potential: PotentialField, config: SimConfig, k: int) -> list[EigenPair]:
    """First k eigenpairs of the central-difference Hamiltonian, energies ascending.

    States come back orthonormal under the rectangle-rule inner product.
    """
    _require_same_grid(potential.config, config)
    n = config.grid_points
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    dx = config.dx
    t = config.hbar**2 / (2.0 * config.mass * dx**2)
    diagonal = potential.values + 2.0 * t
    off_diagonal = np.full(n - 1, -t)
    energies, vectors = eigh_tridiagonal(
        diagonal, off_diagonal, select="i", select_range=(0, k - 1)
    )
    pairs = []
    for i in range(k):
        psi = vectors[:, i].astype(complex) / np.sqrt(dx)
        pairs.append(EigenPair(float(energies[i]), WaveFunction(psi, config)))
    return pairs
