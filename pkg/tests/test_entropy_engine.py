from math import e, log, pi, sqrt

import numpy as np
import pytest
from scipy.stats import norm

from src.core.exceptions import NegativeEntropyBeyondFloor
from src.distributions.distributions.centered_exponential import (
    CenteredExponentialDistribution,
)
from src.distributions.distributions.laplace import LaplaceDistribution
from src.distributions.distributions.uniform import UniformDistribution
from src.services.entropy_service import EntropyService
from src.services.models.density_models import GridDensity, GridParams
from src.utils.normal_utils import normal_pdf, std_normal_pdf

GRID = GridParams(lo=-12.0, hi=12.0, n_points=2**14)


def gaussian_density(grid: GridParams, mean: float = 0.0, sigma: float = 1.0) -> GridDensity:
    return GridDensity(lo=grid.lo, hi=grid.hi, values=normal_pdf(grid.x - mean, sigma))


def test_standard_normal_has_zero_entropy(entropy_service):
    report = entropy_service.relative_entropy_std(gaussian_density(GRID))
    assert report.D_total == pytest.approx(0.0, abs=1e-10)
    assert report.D_core + report.D_tail == pytest.approx(report.D_total)


def test_wide_gaussian(entropy_service):
    grid = GridParams(lo=-30.0, hi=30.0, n_points=2**15)
    report = entropy_service.relative_entropy_std(gaussian_density(grid, sigma=2.0))
    assert report.D_total == pytest.approx(1.5 - log(2.0), abs=1e-8)


def test_shifted_gaussian(entropy_service):
    # D(N(μ, σ²) || N(0, 1)) = (σ² + μ² - 1)/2 - log σ
    report = entropy_service.relative_entropy_std(gaussian_density(GRID, mean=0.3, sigma=1.2))
    assert report.D_total == pytest.approx((1.44 + 0.09 - 1.0) / 2 - log(1.2), abs=1e-9)


def test_uniform_entropy(entropy_service, density_service):
    # h(Z) - h(U) with h(U) = log(2√3)
    expected = 0.5 * log(2 * pi * e) - log(2 * sqrt(3.0))
    p = density_service.density_from_spec(UniformDistribution(), GRID)
    assert entropy_service.relative_entropy_std(p).D_total == pytest.approx(expected, abs=2e-3)


def test_tail_of_standard_normal(entropy_service):
    T = sqrt(3.0)
    expected = 2 * (T * std_normal_pdf(T) + norm.sf(T))
    assert entropy_service.tail_second_moment(gaussian_density(GRID), T) == pytest.approx(
        expected, abs=1e-3
    )

    report = entropy_service.relative_entropy_std(gaussian_density(GRID))
    assert report.T_used == pytest.approx(T)
    assert report.tail_mass == pytest.approx(2 * norm.sf(T), abs=1e-3)


@pytest.mark.parametrize(
    "distribution",
    [LaplaceDistribution(), CenteredExponentialDistribution(), UniformDistribution()],
)
def test_matched_moment_identity(entropy_service, density_service, distribution):
    p = density_service.density_from_spec(distribution, GRID)
    report = entropy_service.relative_entropy_std(p)
    check = entropy_service.matched_moment_identity(p)
    assert check.reconstruction == pytest.approx(report.D_total, abs=1e-8)
    assert check.variance == pytest.approx(1.0, abs=1e-2)


def test_matched_identity_for_scaled_sum(entropy_service, density_service):
    p = density_service.convolve_power(CenteredExponentialDistribution(), 16, GRID)
    scaled = GridDensity(lo=2 * p.lo, hi=2 * p.hi, values=p.values / 2)
    report = entropy_service.relative_entropy_std(scaled)
    check = entropy_service.matched_moment_identity(scaled)
    assert check.reconstruction == pytest.approx(report.D_total, abs=1e-8)
    assert check.variance == pytest.approx(4.0, abs=1e-6)


def test_entropy_floor(entropy_service):
    half = GridDensity(lo=GRID.lo, hi=GRID.hi, values=0.5 * std_normal_pdf(GRID.x))
    with pytest.raises(NegativeEntropyBeyondFloor):
        entropy_service.relative_entropy_std(half)


def test_tail_split_radius(entropy_service, logger, settings):
    assert EntropyService.tail_split_radius(2.0, 100, 3.0) == pytest.approx(sqrt(3.0))
    assert EntropyService.tail_split_radius(4.0, 100, 3.0) == pytest.approx(
        sqrt(2 * log(100) + 4 * log(log(100)) + 3.0)
    )
    with pytest.raises(ValueError):
        EntropyService.tail_split_radius(1.5, 100, 3.0)

    assert entropy_service.rho_n(100) == settings.RHO_N
    loglog = EntropyService(logger, settings.model_copy(update={"RHO_N_MODE": "loglog"}))
    assert loglog.rho_n(100) == pytest.approx(log(log(100)))


def test_entropy_is_positive_for_sums(entropy_service, density_service):
    values = [
        entropy_service.relative_entropy_std(
            density_service.convolve_power(CenteredExponentialDistribution(), n, GRID)
        ).D_total
        for n in [4, 16, 64]
    ]
    assert all(v > 0 for v in values)
    assert values == sorted(values, reverse=True)
    assert np.isfinite(values).all()
