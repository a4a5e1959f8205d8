import logging

import numpy as np
import pytest
from dependency_injector import providers

from src.container import Container
from src.core.settings import Settings


@pytest.fixture
def settings(tmp_path) -> Settings:
    return Settings(
        LOGGING_LEVEL=logging.WARNING,
        GRID_POINTS=2**12,
        GRID_CONVERGENCE_CHECK=False,
        MONTE_CARLO_DRAWS=200_000,
        OUTPUT_PATH=tmp_path / "reports",
    )


@pytest.fixture
def container(settings) -> Container:
    container = Container()
    container.settings.override(providers.Object(settings))
    return container


@pytest.fixture
def logger(container):
    return container.logger()


@pytest.fixture
def coefficient_service(container):
    return container.coefficient_service()


@pytest.fixture
def density_service(container):
    return container.density_service()


@pytest.fixture
def mixture_service(container):
    return container.mixture_service()


@pytest.fixture
def entropy_service(container):
    return container.entropy_service()


@pytest.fixture
def experiment_service(container):
    return container.experiment_service()


@pytest.fixture
def report_service(container):
    return container.report_service()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20110519)


@pytest.fixture
def full_grid_container(tmp_path) -> Container:
    """Default-sized grids for the desk-scale rate runs"""
    container = Container()
    container.settings.override(
        providers.Object(
            Settings(
                LOGGING_LEVEL=logging.WARNING,
                GRID_CONVERGENCE_CHECK=False,
                OUTPUT_PATH=tmp_path / "reports",
            )
        )
    )
    return container
