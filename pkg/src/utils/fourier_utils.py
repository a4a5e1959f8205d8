"""Characteristic functions on a grid and back.

With x_i = lo + i h and t_k = (k - N/2) Δt, Δt = 2π / (N h), the inversion
p(x_i) = (1/2π) ∫ e^{-i t x_i} v(t) dt becomes one FFT up to the sign pattern (-1)^i.
"""

import numpy as np
from scipy.signal import czt

from src.services.models.density_models import GridParams


def frequency_step(grid: GridParams) -> float:
    return 2.0 * np.pi / (grid.n_points * grid.step)


def frequency_grid(grid: GridParams) -> np.ndarray:
    return (np.arange(grid.n_points) - grid.n_points // 2) * frequency_step(grid)


def cf_to_density_values(cf_values: np.ndarray, grid: GridParams) -> np.ndarray:
    """Real part of the inverse transform, ringing left in place"""
    t = frequency_grid(grid)
    transformed = np.fft.fft(cf_values * np.exp(-1j * t * grid.lo))
    signs = np.where(np.arange(grid.n_points) % 2 == 0, 1.0, -1.0)
    return (frequency_step(grid) / (2.0 * np.pi)) * signs * transformed.real


def grid_cf(values: np.ndarray, source: GridParams, tau0: float, dtau: float, count: int) -> np.ndarray:
    """h Σ_j p_j e^{iτ_k x_j} at τ_k = τ0 + k dtau, k < count, via the chirp-z transform"""
    h = source.step
    a = np.exp(-1j * tau0 * h)
    w = np.exp(1j * dtau * h)
    tau = tau0 + dtau * np.arange(count)
    return h * np.exp(1j * tau * source.lo) * czt(values.astype(complex), m=count, w=w, a=a)


def grid_cf_at(values: np.ndarray, source: GridParams, tau: np.ndarray) -> np.ndarray:
    """grid_cf on an arithmetic progression tau"""
    dtau = tau[1] - tau[0] if len(tau) > 1 else 0.0
    return grid_cf(values, source, float(tau[0]), float(dtau), len(tau))
