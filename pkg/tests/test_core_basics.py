"""Grid, potential, and measurement contracts with closed-form oracles."""
from __future__ import annotations

import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.interpolate import CubicSpline

from qmotion.core import (
    BoundsError,
    ControlSample,
    GridMismatchError,
    PotentialField,
    SimConfig,
    TweezerSpec,
    WaveFunction,
    fidelity,
    gaussian_state,
    ground_state,
    tweezer_potential,
    zone_probability,
)


def test_grid_points_must_be_power_of_two():
    with pytest.raises(ValueError):
        SimConfig(grid_points=100)
    with pytest.raises(ValueError):
        SimConfig(grid_points=8)
    SimConfig(grid_points=16)


def test_config_rejects_bad_domain_and_dt():
    with pytest.raises(ValueError):
        SimConfig(domain_min=1.0, domain_max=-1.0)
    with pytest.raises(ValueError):
        SimConfig(dt=0.0)


def test_grid_spacing_and_momentum_grid():
    config = SimConfig()
    assert config.dx == pytest.approx(2.0 / 256)
    assert config.x[0] == pytest.approx(-1.0)
    assert config.x[128] == pytest.approx(0.0)
    np.testing.assert_allclose(config.k, 2 * np.pi * np.fft.fftfreq(256, d=config.dx))


def test_tweezer_potential_matches_closed_form():
    # Oracle: direct evaluation of -A exp(-(x-x0)^2 / (2 sigma^2)).
    config = SimConfig()
    spec = TweezerSpec(sigma=0.05, depth_max=160.0)
    field = tweezer_potential(spec, ControlSample(0.0, 0.0, 160.0), config)
    assert field.values[128] == pytest.approx(-160.0)
    expected_half = -160.0 * math.exp(-(0.5**2) / (2 * 0.05**2))
    i_right = np.argmin(np.abs(config.x - 0.5))
    i_left = np.argmin(np.abs(config.x + 0.5))
    assert field.values[i_right] == pytest.approx(expected_half, rel=1e-12)
    # Closed form gives 160*exp(-50) = 3.086e-20: effectively zero on any scale used here.
    assert abs(field.values[i_right]) < 1e-19
    assert abs(field.values[i_left]) < 1e-19
    # Mirror symmetry about x0.
    assert field.values[i_left] == pytest.approx(field.values[i_right], rel=1e-12)


def test_tweezer_zero_amplitude_is_identically_zero():
    config = SimConfig()
    field = tweezer_potential(TweezerSpec(), ControlSample(0.0, 0.2, 0.0), config)
    assert np.all(field.values == 0.0)


def test_tweezer_bounds_errors_name_the_field():
    spec = TweezerSpec(sigma=0.05, depth_max=160.0, x_min=-0.75, x_max=0.75)
    config = SimConfig()
    with pytest.raises(BoundsError, match="x0"):
        tweezer_potential(spec, ControlSample(0.0, 0.9, 10.0), config)
    with pytest.raises(BoundsError, match="amplitude"):
        tweezer_potential(spec, ControlSample(0.0, 0.0, 200.0), config)
    with pytest.raises(BoundsError, match="amplitude"):
        ControlSample(0.0, 0.0, -1.0)


def test_potential_field_rejects_wrong_length_and_nan():
    config = SimConfig()
    with pytest.raises(ValueError):
        PotentialField(np.zeros(100), config)
    bad = np.zeros(256)
    bad[3] = np.nan
    with pytest.raises(ValueError):
        PotentialField(bad, config)


def test_wavefunction_norm_and_normalize():
    config = SimConfig()
    psi = gaussian_state(config, 0.0, 0.05)
    assert psi.norm_sq() == pytest.approx(1.0, abs=1e-12)
    scaled = WaveFunction(psi.amplitudes * 3.0, config)
    assert scaled.normalized().norm_sq() == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ValueError):
        scaled.require_normalized()


def test_fidelity_gaussian_overlap_closed_form():
    # Oracle: |<a|b>|^2 = exp(-d^2 / (4 sigma^2)) for displaced identical Gaussians.
    config = SimConfig()
    a = gaussian_state(config, -0.1, 0.05)
    b = gaussian_state(config, 0.1, 0.05)
    expected = math.exp(-(0.2**2) / (4 * 0.05**2))
    assert expected == pytest.approx(0.018315638888734179, rel=1e-12)
    assert fidelity(a, b) == pytest.approx(expected, rel=1e-2)
    assert fidelity(a, a) == pytest.approx(1.0, abs=1e-10)


def test_fidelity_rejects_grid_mismatch():
    a = gaussian_state(SimConfig(), 0.0, 0.05)
    b = gaussian_state(SimConfig(grid_points=128), 0.0, 0.05)
    with pytest.raises(GridMismatchError):
        fidelity(a, b)


def test_zone_probability_full_domain_and_orientation():
    config = SimConfig()
    psi = gaussian_state(config, 0.1, 0.05)
    assert zone_probability(psi, -1.0, 1.0) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        zone_probability(psi, 0.5, -0.5)


def test_zone_probability_against_quadrature_oracle():
    # Oracle: adaptive quadrature of the spline-interpolated density, an
    # integration route independent of the rectangle sum under test. The sum
    # covers the cells centered on counted grid points, so the quadrature runs
    # over that same window (zone edges rarely align with cell boundaries).
    config = SimConfig()
    spec = TweezerSpec(sigma=0.05, depth_max=160.0)
    well = tweezer_potential(spec, ControlSample(0.0, 0.0, 160.0), config)
    psi = ground_state(well, config)
    spline = CubicSpline(config.x, psi.density())
    inside = config.x[(config.x >= -0.05) & (config.x <= 0.05)]
    lo, hi = inside[0] - config.dx / 2, inside[-1] + config.dx / 2
    expected, _ = quad(spline, lo, hi, limit=200)
    assert zone_probability(psi, -0.05, 0.05) == pytest.approx(expected, abs=1e-3)


def test_expectation_position_tracks_gaussian_center():
    config = SimConfig()
    psi = gaussian_state(config, 0.893, 0.01)
    assert psi.expectation_position() == pytest.approx(0.893, abs=1e-3)
