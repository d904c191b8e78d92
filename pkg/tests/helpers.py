"""Shared measurement utilities for the test suite."""
from __future__ import annotations

import numpy as np
from scipy.optimize import curve_fit


def measure_oscillation_period(times: np.ndarray, values: np.ndarray) -> float:
    """Period of a near-sinusoidal trace by FFT-seeded least-squares cosine fit."""
    centered = values - values.mean()
    freqs = np.fft.rfftfreq(len(times), d=times[1] - times[0])
    spectrum = np.abs(np.fft.rfft(centered))
    f0 = freqs[np.argmax(spectrum[1:]) + 1]

    def model(t, a, b, omega, phi):
        return a + b * np.cos(omega * t + phi)

    p0 = [values.mean(), (values.max() - values.min()) / 2, 2 * np.pi * f0, 0.0]
    popt, _ = curve_fit(model, times, values, p0=p0, maxfev=20000)
    return float(2 * np.pi / abs(popt[2]))
