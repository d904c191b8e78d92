"""Timed control paths: the sequence of tweezer knots a play is made of."""
from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from ..core.potential import ControlSample

PATH_ORIGINS = ("human", "local_opt", "stochastic_opt", "hybrid", "reference", "edited")


@dataclass(frozen=True)
class ControlPath:
    """At least two knots with strictly increasing times starting at t = 0."""

    samples: tuple[ControlSample, ...]
    origin: str = "human"

    def __post_init__(self) -> None:
        samples = tuple(self.samples)
        object.__setattr__(self, "samples", samples)
        if len(samples) < 2:
            raise ValueError(f"a path needs at least 2 samples, got {len(samples)}")
        if samples[0].t != 0.0:
            raise ValueError(f"first sample must be at t=0, got t={samples[0].t}")
        times = [s.t for s in samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("sample times must be strictly increasing")
        if self.origin not in PATH_ORIGINS:
            raise ValueError(f"unknown origin {self.origin!r}, expected one of {PATH_ORIGINS}")

    @property
    def duration(self) -> float:
        return self.samples[-1].t

    def times(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    def positions(self) -> np.ndarray:
        return np.array([s.x0 for s in self.samples])

    def amplitudes(self) -> np.ndarray:
        return np.array([s.amplitude for s in self.samples])

    def with_origin(self, origin: str) -> "ControlPath":
        return replace(self, origin=origin)

    def interpolate(self, t: np.ndarray | float) -> tuple[np.ndarray, np.ndarray]:
        """Piecewise-linear (x0, amplitude) at the requested times, clamped to the ends."""
        knots = self.times()
        return (
            np.interp(t, knots, self.positions()),
            np.interp(t, knots, self.amplitudes()),
        )


def path_from_arrays(
    t: np.ndarray, x0: np.ndarray, amplitude: np.ndarray, origin: str = "human"
) -> ControlPath:
    samples = tuple(
        ControlSample(float(ti), float(xi), float(ai)) for ti, xi, ai in zip(t, x0, amplitude)
    )
    return ControlPath(samples, origin=origin)
