import asyncio
import math
from math import log

import pytest
from dependency_injector import providers

from src.core.exceptions import CumulantAssumptionViolated
from src.distributions.distributions.gaussian_mixture import GaussianMixtureDistribution
from src.services.experiment_service import default_n_list
from src.services.models.density_models import DistributionSpec, MixingMeasure
from src.services.models.experiment_models import ExperimentKind, LowerBoundRow


def test_default_n_list():
    assert default_n_list() == [16, 32, 64, 128, 256, 512, 1024]


def test_gaussian_converge(experiment_service):
    table = asyncio.run(
        experiment_service.converge_experiment(DistributionSpec(family="gaussian"), 4, [16, 32, 64])
    )
    assert table.kind == ExperimentKind.CONVERGE
    assert [row.n for row in table.rows] == [16, 32, 64]
    for row in table.rows:
        assert row.valid
        assert row.D_n == pytest.approx(0.0, abs=1e-8)
        assert row.prediction == 0.0
        assert row.residual == row.D_n - row.prediction


def test_exponential_converge_rows(experiment_service):
    table = asyncio.run(
        experiment_service.converge_experiment(
            DistributionSpec(family="centered_exponential"), 4, [64, 128]
        )
    )
    assert table.metadata["coefficients"] == ["1/3"]
    for row in table.rows:
        assert row.prediction == pytest.approx(1 / (3 * row.n))
        assert row.scaled_residual == pytest.approx(row.residual * (row.n * log(row.n)))
        assert row.T_used > 0
        assert row.n * row.D_n == pytest.approx(1 / 3, abs=0.15)


def test_rows_keep_input_order_when_concurrent(container, settings):
    container.settings.override(providers.Object(settings.model_copy(update={"CONCURRENT_ROWS": 3})))
    service = container.experiment_service()
    table = asyncio.run(
        service.converge_experiment(DistributionSpec(family="laplace"), 6, [16, 32, 64, 128])
    )
    assert [row.n for row in table.rows] == [16, 32, 64, 128]


def test_invalid_n_list(experiment_service):
    with pytest.raises(ValueError):
        asyncio.run(
            experiment_service.converge_experiment(DistributionSpec(family="laplace"), 6, [64, 16])
        )


def test_corollary_limits(experiment_service):
    laplace = asyncio.run(
        experiment_service.corollary12_experiment(DistributionSpec(family="laplace"), 4, n_list=[16])
    )
    assert laplace.rows[0].limit == pytest.approx(9 / 48)

    uniform = asyncio.run(
        experiment_service.corollary12_experiment(DistributionSpec(family="uniform"), 4, n_list=[16])
    )
    assert uniform.rows[0].limit == pytest.approx(0.03)

    mixture = GaussianMixtureDistribution.zero_fourth_cumulant()
    table = asyncio.run(experiment_service.corollary12_experiment(mixture, 6, n_list=[16]))
    gamma6 = -2 * (6 / 5) ** 6 / 9
    assert table.rows[0].limit == pytest.approx(gamma6**2 / 1440)


def test_corollary_needs_vanishing_cumulants(experiment_service):
    with pytest.raises(CumulantAssumptionViolated):
        asyncio.run(
            experiment_service.corollary12_experiment(
                DistributionSpec(family="centered_exponential"), 4, n_list=[16]
            )
        )


def test_degenerate_lower_bound(experiment_service):
    table = asyncio.run(
        experiment_service.lowerbound_experiment(3.0, 1.5, [16, 32], MixingMeasure.degenerate())
    )
    for row in table.rows:
        assert row.D_n == pytest.approx(0.0, abs=1e-8)
        assert row.bound == 0.0
        assert math.isnan(row.ratio)
        assert row.above_half_bound is None
    assert table.metadata["fitted_constant"] is None


def test_lower_bound_rows_are_flagged(capsys, experiment_service):
    rows = [
        LowerBoundRow(n=16, D_n=2e-3, bound=1e-3, ratio=2.0, theorem13_scale=1.0),
        LowerBoundRow(n=32, D_n=1.2e-3, bound=1e-3, ratio=1.2, theorem13_scale=1.0),
        LowerBoundRow(n=64, D_n=0.9e-3, bound=1e-3, ratio=0.9, theorem13_scale=1.0),
        LowerBoundRow(
            n=128,
            D_n=math.nan,
            bound=1e-3,
            ratio=math.nan,
            theorem13_scale=math.nan,
            valid=False,
            error="grid",
        ),
    ]
    assert experiment_service.fit_lower_bound_constant(rows) == 2.0
    assert [row.above_half_bound for row in rows] == [True, True, False, None]
    assert all(row.fitted_constant == 2.0 for row in rows)
    assert "n=64: D_n=9.000e-04 is below half the fitted bound 2.000e-03" in capsys.readouterr().err


def test_grid_convergence_check(container, settings):
    container.settings.override(
        providers.Object(settings.model_copy(update={"GRID_CONVERGENCE_CHECK": True}))
    )
    service = container.experiment_service()
    table = asyncio.run(
        service.converge_experiment(DistributionSpec(family="gaussian"), 4, [16, 32])
    )
    for row in table.rows:
        assert row.grid_drift is not None
        assert row.grid_drift <= settings.GRID_CONVERGENCE_TOLERANCE


def test_condition_sequence(experiment_service, mixture_service):
    s = 3.0
    P = mixture_service.theorem13_measure(s, 1.5)
    table = experiment_service.condition81_check(P, s, (s - 2) / (2 * s), [16, 64, 256, 1024])
    assert all(row.value > 0 for row in table.rows)
    assert table.metadata["minimum"] == min(row.value for row in table.rows)

    decaying = experiment_service.condition81_check(P, s, 0.5, [16, 64, 256, 1024])
    values = [row.value for row in decaying.rows]
    assert values == sorted(values, reverse=True)

    compact = experiment_service.condition81_check(MixingMeasure.degenerate(), s, 0.1, [16, 64])
    assert all(row.value == 0 for row in compact.rows)


@pytest.mark.slow
def test_exponential_first_order_rate(full_grid_container):
    service = full_grid_container.experiment_service()
    table = asyncio.run(
        service.converge_experiment(
            DistributionSpec(family="centered_exponential"), 4, [64, 128, 256, 512, 1024]
        )
    )
    scaled = [row.n * row.D_n for row in table.rows]
    assert abs(scaled[-1] - 1 / 3) <= 0.05
    distances = [abs(v - 1 / 3) for v in scaled[-4:]]
    assert distances == sorted(distances, reverse=True)
    # the residual past c_1/n is O(1/n²), so (n log n) times it shrinks
    residuals = [row.scaled_residual for row in table.rows]
    assert all(math.isfinite(r) for r in residuals)
    assert abs(residuals[-1]) <= abs(residuals[0])


@pytest.mark.slow
@pytest.mark.parametrize("family, limit", [("laplace", 3 / 16), ("uniform", 0.03)])
def test_second_order_rate(full_grid_container, family, limit):
    service = full_grid_container.experiment_service()
    table = asyncio.run(
        service.corollary12_experiment(DistributionSpec(family=family), 4, n_list=[128, 256, 512])
    )
    assert table.rows[-1].scaled_D_n == pytest.approx(limit, rel=0.15)


@pytest.mark.slow
def test_heavy_tail_floor(full_grid_container):
    service = full_grid_container.experiment_service()
    table = asyncio.run(service.lowerbound_experiment(3.0, 1.5, default_n_list()))
    scales = [row.theorem13_scale for row in table.rows]
    assert all(v > 0 for v in scales)
    assert min(scales) >= 0.25 * max(scales)
    assert all(row.bound > 0 for row in table.rows)


@pytest.mark.slow
def test_laplace_prediction_dominates(full_grid_container):
    service = full_grid_container.experiment_service()
    table = asyncio.run(
        service.converge_experiment(DistributionSpec(family="laplace"), 6, [256, 512, 1024])
    )
    for row in table.rows:
        assert row.prediction == pytest.approx(3 / 16 / row.n**2)
        assert abs(row.D_n - row.prediction) <= 0.2 * row.prediction
