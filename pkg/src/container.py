from dependency_injector import containers, providers

from src.core.logger import Logger
from src.core.settings import Settings
from src.services.coefficient_service import CoefficientService
from src.services.density_service import DensityService
from src.services.entropy_service import EntropyService
from src.services.experiment_service import ExperimentService
from src.services.mixture_service import MixtureService
from src.services.report_service import ReportService
from src.storage.repositories.csv_report_repository import CsvReportRepository
from src.storage.repositories.grid_density_repository import GridDensityRepository
from src.storage.repositories.jsonl_report_repository import JsonLinesReportRepository


class Container(containers.DeclarativeContainer):
    # Core
    settings = providers.Singleton(Settings)
    logger = providers.Singleton(Logger, settings=settings)

    # Repositories
    csv_report_repository = providers.Singleton(CsvReportRepository, settings=settings)
    jsonl_report_repository = providers.Singleton(
        JsonLinesReportRepository, settings=settings
    )
    grid_density_repository = providers.Singleton(
        GridDensityRepository, settings=settings
    )

    # Services
    coefficient_service = providers.Singleton(
        CoefficientService, logger=logger, settings=settings
    )
    density_service = providers.Singleton(
        DensityService,
        logger=logger,
        settings=settings,
        grid_density_repository=grid_density_repository,
    )
    entropy_service = providers.Singleton(EntropyService, logger=logger, settings=settings)
    mixture_service = providers.Singleton(
        MixtureService,
        logger=logger,
        settings=settings,
        density_service=density_service,
    )
    report_service = providers.Singleton(
        ReportService,
        logger=logger,
        settings=settings,
        csv_report_repository=csv_report_repository,
        jsonl_report_repository=jsonl_report_repository,
    )

    # Services which depend on other services
    experiment_service = providers.Singleton(
        ExperimentService,
        logger=logger,
        settings=settings,
        coefficient_service=coefficient_service,
        density_service=density_service,
        mixture_service=mixture_service,
        entropy_service=entropy_service,
    )
