"""Reference control paths: clean solutions used as baselines and demos.

Transport uses the minimum-jerk ramp s(tau) = 10 tau^3 - 15 tau^4 + 6 tau^5,
which starts and ends at rest with zero acceleration — the smoothest standard
point-to-point move. Tunneling levels instead park the tweezer at a fixed
offset and wait half a tunneling period, computed from the two lowest
eigenstates of the parked landscape.
"""
from __future__ import annotations

import numpy as np

from ..core.grid import SimConfig
from ..core.potential import ControlSample
from ..core.stationary import eigenstates
from ..paths.model import ControlPath, path_from_arrays
from .model import Level
from .states import trap_center, trap_potential


def min_jerk(tau: np.ndarray | float) -> np.ndarray | float:
    """Smooth 0 -> 1 ramp with zero velocity and acceleration at both ends."""
    tau = np.clip(tau, 0.0, 1.0)
    return 10.0 * tau**3 - 15.0 * tau**4 + 6.0 * tau**5


def transport_samples(
    x_start: float,
    x_end: float,
    depth: float,
    duration: float,
    n_samples: int = 41,
    t_start: float = 0.0,
) -> list[ControlSample]:
    """Min-jerk knots from x_start to x_end at constant depth."""
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    tau = np.linspace(0.0, 1.0, n_samples)
    x = x_start + (x_end - x_start) * min_jerk(tau)
    return [
        ControlSample(t_start + float(ti) * duration, float(xi), depth)
        for ti, xi in zip(tau, x)
    ]


def transport_path(
    x_start: float,
    x_end: float,
    depth: float,
    duration: float,
    n_samples: int = 41,
) -> ControlPath:
    return ControlPath(tuple(transport_samples(x_start, x_end, depth, duration, n_samples)), origin="reference")


def ramp_depth_path(
    x0: float,
    depth_start: float,
    depth_end: float,
    duration: float,
    n_samples: int = 21,
) -> ControlPath:
    """Hold position while ramping the depth linearly (scoop or release)."""
    t = np.linspace(0.0, duration, n_samples)
    depth = np.linspace(depth_start, depth_end, n_samples)
    return path_from_arrays(t, np.full(n_samples, x0), depth, origin="reference")


def straight_drag_path(x_start: float, x_end: float, depth: float, duration: float) -> ControlPath:
    """Two-knot constant-velocity drag; the blunt way to move a trap."""
    return ControlPath(
        (ControlSample(0.0, x_start, depth), ControlSample(duration, x_end, depth)),
        origin="reference",
    )


def carry_ramp_path(
    x_start: float,
    x_end: float,
    duration: float,
    depth_start: float,
    depth_end: float,
    n_samples: int = 41,
) -> ControlPath:
    """Min-jerk move while the depth ramps linearly between two values.

    The workhorse smooth primitive: constant depth gives plain transport,
    ramping down en route splits or sheds the packet.
    """
    if not duration > 0:
        raise ValueError(f"duration must be positive, got {duration}")
    if n_samples < 2:
        raise ValueError(f"need at least 2 samples, got {n_samples}")
    tau = np.linspace(0.0, 1.0, n_samples)
    x = x_start + (x_end - x_start) * min_jerk(tau)
    depth = depth_start + (depth_end - depth_start) * tau
    return path_from_arrays(tau * duration, x, depth, origin="reference")


def scoop_samples(
    x_well: float,
    depth: float,
    ramp_duration: float,
    n_ramp: int = 11,
) -> list[ControlSample]:
    """Turn the tweezer on gradually over an occupied well (0 -> depth)."""
    if not ramp_duration > 0:
        raise ValueError(f"ramp_duration must be positive, got {ramp_duration}")
    t = np.linspace(0.0, ramp_duration, n_ramp + 1)
    a = np.linspace(0.0, depth, n_ramp + 1)
    return [ControlSample(float(ti), x_well, float(ai)) for ti, ai in zip(t, a)]


def release_samples(
    x0: float,
    depth: float,
    release_duration: float,
    t_start: float,
    n_ramp: int = 11,
) -> list[ControlSample]:
    """Ramp the tweezer off in place (depth -> 0), leaving the static trap."""
    if not release_duration > 0:
        raise ValueError(f"release_duration must be positive, got {release_duration}")
    return [
        ControlSample(t_start + release_duration * i / n_ramp, x0, depth * (1.0 - i / n_ramp))
        for i in range(1, n_ramp + 1)
    ]


def scoop_and_carry_path(
    x_well: float,
    x_end: float,
    depth: float,
    ramp_duration: float,
    carry_duration: float,
    n_samples: int = 41,
) -> ControlPath:
    """Scoop the atom out of a static well, then transport it."""
    samples = scoop_samples(x_well, depth, ramp_duration)
    samples += transport_samples(
        x_well, x_end, depth, carry_duration, n_samples, t_start=ramp_duration
    )[1:]
    return ControlPath(tuple(samples), origin="reference")


def carry_and_release_path(
    x_start: float,
    x_end: float,
    depth: float,
    carry_duration: float,
    release_duration: float,
    n_samples: int = 41,
) -> ControlPath:
    """Transport, then hand the atom over to the static trap underneath."""
    samples = transport_samples(x_start, x_end, depth, carry_duration, n_samples)
    samples += release_samples(x_end, depth, release_duration, carry_duration)
    return ControlPath(tuple(samples), origin="reference")


def scoop_carry_release_path(
    x_well: float,
    x_end: float,
    depth: float,
    ramp_duration: float,
    carry_duration: float,
    release_duration: float,
    n_samples: int = 41,
) -> ControlPath:
    """Full ferry: scoop from one well, carry, release into another."""
    samples = scoop_samples(x_well, depth, ramp_duration)
    samples += transport_samples(
        x_well, x_end, depth, carry_duration, n_samples, t_start=ramp_duration
    )[1:]
    samples += release_samples(x_end, depth, release_duration, ramp_duration + carry_duration)
    return ControlPath(tuple(samples), origin="reference")


def tunneling_transfer_time(level: Level, park: ControlSample, config: SimConfig) -> float:
    """Half the tunneling period of the parked landscape.

    With the tweezer parked next to an occupied static well the two lowest
    states split by dE, and a state localized on one side swings to the other
    in pi * hbar / dE.
    """
    parked = trap_potential(level, park, config)
    pair = eigenstates(parked, config, k=2)
    gap = pair[1].energy - pair[0].energy
    if gap <= 0:
        raise ValueError(f"parked landscape has no tunneling splitting (gap {gap})")
    return float(np.pi * config.hbar / gap)


def park_and_tunnel_path(
    level: Level,
    park_x: float,
    depth: float,
    config: SimConfig,
    carry_duration: float | None = None,
    n_samples: int = 41,
    hold_scale: float = 1.0,
) -> ControlPath:
    """Park the tweezer at park_x, wait half a tunneling period, then carry.

    The carry leg moves min-jerk from the parking spot to the target trap
    center; when the parking spot already is the target, the path just holds.
    hold_scale shortens (or stretches) the wait relative to the eigenvalue
    half-period: transfer keeps going while the carry leg pulls away slowly,
    so the best hand-off usually waits a little less than the full half swing.
    """
    if not hold_scale > 0:
        raise ValueError(f"hold_scale must be positive, got {hold_scale}")
    park = ControlSample(0.0, park_x, depth)
    hold = hold_scale * tunneling_transfer_time(level, park, config)
    samples = [park, ControlSample(hold, park_x, depth)]
    x_target = trap_center(level, level.target_trap)
    if abs(x_target - park_x) > 1e-12:
        if carry_duration is None:
            carry_duration = max(0.25 * level.duration_max, 0.1)
        samples += transport_samples(
            park_x, x_target, depth, carry_duration, n_samples, t_start=hold
        )[1:]
    return ControlPath(tuple(samples), origin="reference")
