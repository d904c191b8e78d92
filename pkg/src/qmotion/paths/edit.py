"""FineTune operations on control paths.

Every editor returns a new path and never emits one that violates the path
invariants. Editors that reshape the control (move, stretch, smooth) mark the
result origin "edited"; resample keeps the origin because it only changes the
representation.
"""
from __future__ import annotations

from collections.abc import Collection

import numpy as np

from ..core.potential import ControlSample, TweezerSpec
from .model import ControlPath, path_from_arrays


def resample(path: ControlPath, rate: float) -> ControlPath:
    """Linear resample onto a uniform grid of `rate` samples per time unit.

    Both endpoints (t = 0 and t = duration) are always kept exactly.
    """
    if not rate > 0:
        raise ValueError(f"rate must be positive, got {rate}")
    duration = path.duration
    n = int(np.floor(duration * rate + 1e-9))
    times = np.arange(n + 1) / rate
    if abs(times[-1] - duration) <= 1e-9 * max(1.0, duration):
        times[-1] = duration
    else:
        times = np.append(times, duration)
    x0, amp = path.interpolate(times)
    return path_from_arrays(times, x0, amp, origin=path.origin)


def move_point(
    path: ControlPath,
    index: int,
    new_sample: ControlSample,
    spec: TweezerSpec | None = None,
) -> ControlPath:
    """Replace one knot, keeping time ordering (and bounds when a spec is given)."""
    n = len(path.samples)
    if not 0 <= index < n:
        raise IndexError(f"index {index} out of range for {n} samples")
    if index == 0 and new_sample.t != 0.0:
        raise ValueError(f"first sample must stay at t=0, got t={new_sample.t}")
    if index > 0 and new_sample.t <= path.samples[index - 1].t:
        raise ValueError(
            f"t={new_sample.t} does not stay after the previous sample at t={path.samples[index - 1].t}"
        )
    if index < n - 1 and new_sample.t >= path.samples[index + 1].t:
        raise ValueError(
            f"t={new_sample.t} does not stay before the next sample at t={path.samples[index + 1].t}"
        )
    if spec is not None:
        spec.check_sample(new_sample)
    samples = list(path.samples)
    samples[index] = new_sample
    return ControlPath(tuple(samples), origin="edited")


def stretch_time(path: ControlPath, factor: float) -> ControlPath:
    """Scale every sample time by `factor` (> 0)."""
    if not factor > 0:
        raise ValueError(f"factor must be positive, got {factor}")
    samples = tuple(
        ControlSample(s.t * factor, s.x0, s.amplitude) for s in path.samples
    )
    return ControlPath(samples, origin="edited")


def smooth(
    path: ControlPath, window: int = 5, locked: Collection[int] = ()
) -> ControlPath:
    """Moving-average x0 and amplitude; locked samples stay bit-identical.

    The window must be odd and >= 3; it shrinks near the ends. Locked samples
    keep their values but still participate in their neighbors' averages.
    Times are never touched.
    """
    if window < 3 or window % 2 == 0:
        raise ValueError(f"window must be odd and >= 3, got {window}")
    locked_set = set(locked)
    n = len(path.samples)
    for i in locked_set:
        if not 0 <= i < n:
            raise IndexError(f"locked index {i} out of range for {n} samples")
    half = window // 2
    x0 = path.positions()
    amp = path.amplitudes()
    new_x0 = x0.copy()
    new_amp = amp.copy()
    for i in range(n):
        if i in locked_set:
            continue
        lo, hi = max(0, i - half), min(n, i + half + 1)
        new_x0[i] = float(np.mean(x0[lo:hi]))
        new_amp[i] = float(np.mean(amp[lo:hi]))
    samples = tuple(
        ControlSample(s.t, float(xi), float(ai))
        for s, xi, ai in zip(path.samples, new_x0, new_amp)
    )
    return ControlPath(samples, origin="edited")
