"""Potential landscapes: Gaussian tweezer wells, static features, samples.

A tweezer is an attractive Gaussian well V(x) = -A * exp(-(x - x0)^2 / (2 sigma^2))
with depth A >= 0. Static wells use the same shape; barriers are the same shape
with positive sign.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import SimConfig


class BoundsError(ValueError):
    """A control sample or spec parameter left its allowed range."""


@dataclass(frozen=True)
class PotentialField:
    """Potential sampled on the grid of its config."""

    values: np.ndarray
    config: SimConfig

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.shape != (self.config.grid_points,):
            raise ValueError(
                f"potential has {values.shape[0] if values.ndim == 1 else values.shape} "
                f"values for a {self.config.grid_points}-point grid"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("potential contains non-finite values")


@dataclass(frozen=True)
class TweezerSpec:
    """Width, depth ceiling, and allowed center positions of the control tweezer."""

    sigma: float = 0.05
    depth_max: float = 160.0
    x_min: float = -0.75
    x_max: float = 0.75

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise BoundsError(f"sigma must be positive, got {self.sigma}")
        if not self.depth_max > 0:
            raise BoundsError(f"depth_max must be positive, got {self.depth_max}")
        if not self.x_max > self.x_min:
            raise BoundsError(f"x_max must exceed x_min, got [{self.x_min}, {self.x_max}]")

    def check_sample(self, sample: "ControlSample") -> None:
        """Raise BoundsError naming the field that violates this spec."""
        if not self.x_min <= sample.x0 <= self.x_max:
            raise BoundsError(
                f"x0={sample.x0} outside tweezer bounds [{self.x_min}, {self.x_max}]"
            )
        if not 0.0 <= sample.amplitude <= self.depth_max:
            raise BoundsError(
                f"amplitude={sample.amplitude} outside [0, {self.depth_max}]"
            )


@dataclass(frozen=True)
class ControlSample:
    """One timed knot of the tweezer control: time, center, depth."""

    t: float
    x0: float
    amplitude: float

    def __post_init__(self) -> None:
        if not np.isfinite(self.t) or self.t < 0:
            raise BoundsError(f"t must be finite and >= 0, got {self.t}")
        if not np.isfinite(self.x0):
            raise BoundsError(f"x0 must be finite, got {self.x0}")
        if not np.isfinite(self.amplitude) or self.amplitude < 0:
            raise BoundsError(f"amplitude must be finite and >= 0, got {self.amplitude}")


def gaussian_well(config: SimConfig, center: float, depth: float, width: float) -> np.ndarray:
    """Raw values of -depth * exp(-(x-center)^2 / (2 width^2)); negative depth makes a barrier."""
    if not width > 0:
        raise BoundsError(f"width must be positive, got {width}")
    x = config.x
    return -depth * np.exp(-((x - center) ** 2) / (2.0 * width**2))


def tweezer_potential(spec: TweezerSpec, sample: ControlSample, config: SimConfig) -> PotentialField:
    """Attractive Gaussian well of the tweezer at one control sample.

    Zero amplitude gives an identically zero field.
    """
    spec.check_sample(sample)
    if sample.amplitude == 0.0:
        return PotentialField(np.zeros(config.grid_points), config)
    return PotentialField(gaussian_well(config, sample.x0, sample.amplitude, spec.sigma), config)


def harmonic_potential(config: SimConfig, omega: float, center: float = 0.0) -> PotentialField:
    """V(x) = 0.5 * mass * omega^2 * (x - center)^2, mainly for validation."""
    x = config.x
    return PotentialField(0.5 * config.mass * omega**2 * (x - center) ** 2, config)
