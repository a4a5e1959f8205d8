import numpy as np
import pytest
from dependency_injector import providers

from src.core.exceptions import CalibrationFailure
from src.distributions.distributions.normal_scale_mixture import NormalScaleMixtureDistribution
from src.distributions.mixing import check_calibration, mixing_mass, mixing_moment
from src.services.models.density_models import GridParams, MixingMeasure
from src.utils.normal_utils import std_normal_pdf

GRID = GridParams(lo=-12.0, hi=12.0, n_points=2**12)


def two_point_measure(low: float, high: float) -> MixingMeasure:
    """Atoms at low < 1 < high weighted so that E ρ² = 1"""
    weight = (high**2 - 1.0) / (high**2 - low**2)
    return MixingMeasure(atoms=((low, weight), (high, 1.0 - weight)), description="two atoms")


def test_degenerate_measure_is_gaussian(mixture_service):
    P = MixingMeasure.degenerate()
    t = np.linspace(-3, 3, 13)
    np.testing.assert_allclose(mixture_service.mixture_cf(P, t), np.exp(-(t**2) / 2))
    np.testing.assert_allclose(mixture_service.mixture_psi(P, t), 0.0, atol=1e-15)

    p = mixture_service.mixture_pn(P, 16, GRID)
    np.testing.assert_allclose(p.values, std_normal_pdf(p.x), atol=1e-12)


@pytest.mark.parametrize("s", [2.0, 2.5, 3.0, 3.5, 4.0])
def test_psi_bounds(mixture_service, rng, s):
    t = np.linspace(0.05, 1.0, 20)
    for _ in range(200):
        P = two_point_measure(rng.uniform(0.5, 0.99), rng.uniform(1.01, 3.0))
        psi = mixture_service.mixture_psi(P, t)
        M_s = mixture_service.mixture_moment(P, s)
        assert np.all(psi >= -1e-15)
        assert np.all(psi <= M_s * t**s)


def test_mixture_sum_approximation_rate(mixture_service):
    P = two_point_measure(0.5, 1.5)
    errors = []
    for n in [16, 32, 64]:
        p = mixture_service.mixture_pn(P, n, GRID)
        approximation = mixture_service.prop71_approx(P, n, p.x)
        errors.append(np.max(np.abs(p.values - approximation)))

    for coarse, fine in zip(errors, errors[1:]):
        assert 3.0 <= coarse / fine <= 5.0


def test_monte_carlo_oracle(mixture_service):
    P = two_point_measure(0.8, np.sqrt(1.36))
    n = 16
    p = mixture_service.mixture_pn(P, n, GRID)
    x = np.array([-2.0, -0.5, 0.0, 1.0, 2.5])
    mean, stderr = mixture_service.monte_carlo_density(P, n, x, draws=1_000_000)
    assert np.all(np.abs(mean - p(x)) <= 3 * stderr + 1e-12)


def test_sampling_matches_moments(mixture_service):
    P = two_point_measure(0.5, 1.5)
    draws = mixture_service.sample(P, 100_000)
    assert np.mean(draws**2) == pytest.approx(1.0, abs=2e-2)
    assert set(np.unique(draws)) == {0.5, 1.5}


def test_heavy_tailed_measure(mixture_service, settings):
    P = mixture_service.theorem13_measure(3.0, 1.5)
    sigma0 = P.metadata["sigma0"]
    assert 0 < sigma0 < 1
    assert P.metadata["split"] == settings.LOWERBOUND_SIGMA_SPLIT

    assert mixing_mass(P) == pytest.approx(1.0, rel=1e-8)
    assert mixing_moment(P, 2.0) == pytest.approx(1.0, rel=1e-8)
    assert mixture_service.tail_probability(P, settings.LOWERBOUND_SIGMA_SPLIT) == pytest.approx(
        settings.LOWERBOUND_TAIL_WEIGHT, rel=1e-8
    )
    draws = mixture_service.sample(P, 50_000)
    assert draws.min() >= sigma0
    assert np.mean(draws >= settings.LOWERBOUND_SIGMA_SPLIT) == pytest.approx(
        settings.LOWERBOUND_TAIL_WEIGHT, abs=5e-3
    )


def test_lower_bound_column_decreases(mixture_service):
    P = mixture_service.theorem13_measure(3.0, 1.5)
    bounds = [mixture_service.lower_bound(P, n) for n in [16, 64, 256, 1024]]
    assert all(b > 0 for b in bounds)
    assert bounds == sorted(bounds, reverse=True)


def test_calibration_failure(settings, container):
    container.settings.override(
        providers.Object(settings.model_copy(update={"LOWERBOUND_TAIL_WEIGHT": 0.5}))
    )
    with pytest.raises(CalibrationFailure):
        container.mixture_service().theorem13_measure(3.0, 1.5)


def test_measure_validation():
    with pytest.raises(ValueError):
        MixingMeasure(atoms=((0.5, 0.5), (1.5, 0.4)))
    with pytest.raises(ValueError):
        MixingMeasure()


def test_two_point_characteristic_function(mixture_service):
    P = MixingMeasure(atoms=((0.8, 0.5), (np.sqrt(1.36), 0.5)))
    assert mixture_service.mixture_cf(P, 1.0) == pytest.approx(
        (np.exp(-0.32) + np.exp(-0.68)) / 2, rel=1e-14
    )
    t = np.linspace(0.1, 4.0, 40)
    v = mixture_service.mixture_cf(P, t)
    assert np.all(np.exp(-(t**2) / 2) <= v + 1e-15)
    assert np.all(v <= np.exp(-(0.8**2) * t**2 / 2) + 1e-15)


def test_uncalibrated_atoms_are_rejected():
    with pytest.raises(CalibrationFailure):
        MixingMeasure(atoms=((1.0, 0.5), (2.0, 0.5)))


def test_uncalibrated_density_is_rejected():
    # uniform on [1, 2] has E ρ² = 7/3
    P = MixingMeasure(
        density=lambda sigma: np.where((sigma >= 1.0) & (sigma <= 2.0), 1.0, 0.0),
        pieces=((1.0, 2.0),),
        description="uniform on [1, 2]",
    )
    with pytest.raises(CalibrationFailure):
        NormalScaleMixtureDistribution(P)


def test_heavy_tailed_measure_is_calibrated(mixture_service):
    P = mixture_service.theorem13_measure(3.0, 1.5)
    check_calibration(P)
    assert NormalScaleMixtureDistribution(P).measure is P
