"""Integrals against a mixing measure.

Densities are integrated on u = log σ, so polynomially decaying tails become
exponentially decaying integrands for the adaptive rule.
"""

from collections.abc import Callable

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad_vec

from src.core.exceptions import CalibrationFailure, QuadratureFailure
from src.services.models.density_models import MixingMeasure
from src.utils.normal_utils import normal_pdf

SAMPLING_TABLE_POINTS = 20001
# heavy tails are tabulated up to this multiple of the piece start for sampling
SAMPLING_TAIL_SPAN = 1e6


def mixing_expectation(
    measure: MixingMeasure,
    g: Callable[[np.ndarray | float], np.ndarray | float],
    rtol: float = 1e-10,
    lower: float = 0.0,
    upper: float = np.inf,
) -> np.ndarray | float:
    """E g(ρ) restricted to lower <= ρ <= upper"""
    if measure.is_discrete:
        return sum(
            (weight * np.asarray(g(sigma)) for sigma, weight in measure.atoms if lower <= sigma <= upper),
            np.zeros_like(np.asarray(g(1.0)), dtype=float),
        )

    density = measure.density
    total: np.ndarray | float = 0.0
    for a, b in measure.pieces:
        a, b = max(a, lower), min(b, upper)
        if a >= b:
            continue

        def integrand(u: float) -> np.ndarray:
            sigma = np.exp(u)
            return np.asarray(g(sigma)) * density(sigma) * sigma

        value, error, info = quad_vec(
            integrand, np.log(a), np.log(b), epsabs=1e-200, epsrel=rtol, full_output=True
        )
        if not info.success:
            raise QuadratureFailure(
                f"Mixing integral over [{a}, {b}] did not converge (status {info.status})"
            )
        total = total + value
    return total


def mixing_mass(measure: MixingMeasure, rtol: float = 1e-10) -> float:
    return float(mixing_expectation(measure, lambda sigma: 1.0, rtol))


def mixing_moment(measure: MixingMeasure, order: float, rtol: float = 1e-10) -> float:
    return float(mixing_expectation(measure, lambda sigma: sigma**order, rtol))


def check_calibration(measure: MixingMeasure, rtol: float = 1e-10, tolerance: float = 1e-8) -> None:
    """P must be a probability measure with E ρ² = 1 for the mixture to be standardized"""
    mass, second_moment = mixing_mass(measure, rtol), mixing_moment(measure, 2.0, rtol)
    if abs(mass - 1.0) > tolerance or abs(second_moment - 1.0) > tolerance:
        raise CalibrationFailure(
            f"{measure.description or 'Mixing measure'} has mass {mass:.12f} and E ρ² = "
            f"{second_moment:.12f}, both must be 1"
        )


def mixing_tail_probability(measure: MixingMeasure, u: float, rtol: float = 1e-10) -> float:
    return float(mixing_expectation(measure, lambda sigma: 1.0, rtol, lower=u))


def mixing_inverse_tail(measure: MixingMeasure, u: float, rtol: float = 1e-10) -> float:
    """∫_u^∞ σ^{-1} dP(σ)"""
    return float(mixing_expectation(measure, lambda sigma: 1.0 / sigma, rtol, lower=u))


def mixture_cf_values(measure: MixingMeasure, t: np.ndarray | float, rtol: float = 1e-10) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    return np.asarray(
        mixing_expectation(measure, lambda sigma: np.exp(-0.5 * (sigma * t) ** 2), rtol)
    )


def mixture_psi_values(measure: MixingMeasure, t: np.ndarray | float, rtol: float = 1e-10) -> np.ndarray:
    # ψ(t) = E e^{-(ρ²-1)t²/2} - 1, expm1 keeps the small values accurate
    t = np.asarray(t, dtype=float)
    return np.asarray(
        mixing_expectation(
            measure, lambda sigma: np.expm1(-0.5 * (sigma**2 - 1.0) * t**2), rtol
        )
    )


def mixture_density_values(measure: MixingMeasure, x: np.ndarray | float, rtol: float = 1e-10) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    return np.asarray(mixing_expectation(measure, lambda sigma: normal_pdf(x, sigma), rtol))


def sample_mixing(measure: MixingMeasure, rng: np.random.Generator, size: int) -> np.ndarray:
    if measure.is_discrete:
        sigmas = np.array([sigma for sigma, _ in measure.atoms])
        weights = np.array([weight for _, weight in measure.atoms])
        return rng.choice(sigmas, size=size, p=weights / weights.sum())

    # inverse CDF on a tabulated log-spaced grid
    grids = []
    for a, b in measure.pieces:
        b = b if np.isfinite(b) else a * SAMPLING_TAIL_SPAN
        grids.append(np.geomspace(a, b, SAMPLING_TABLE_POINTS))
    sigma = np.concatenate(grids)
    cdf = np.concatenate(
        [cumulative_trapezoid(measure.density(s), s, initial=0.0) for s in grids]
    )
    offsets = np.repeat(
        np.concatenate([[0.0], np.cumsum([c[-1] for c in np.split(cdf, len(grids))])[:-1]]),
        SAMPLING_TABLE_POINTS,
    )
    cdf = cdf + offsets
    return np.interp(rng.uniform(0.0, cdf[-1], size=size), cdf, sigma)
