from pathlib import Path

from dependency_injector import providers
from dependency_injector.wiring import Provide, inject

from src.container import Container
from src.core.logger import Logger
from src.core.settings import Settings

COMMAND_MODULES = [
    "src.api.commands.coefficient_commands",
    "src.api.commands.density_commands",
    "src.api.commands.experiment_commands",
]


class LabSetup:
    def __init__(self, config_path: Path | None = None):
        self.container = Container()

        if config_path is not None:
            # flat KEY=value file, environment variables still take precedence
            self.container.settings.override(
                providers.Singleton(Settings, _env_file=config_path)
            )

    @inject
    def _setup_volumes(
        self,
        settings: Settings = Provide[Container.settings],
        logger: Logger = Provide[Container.logger],
    ) -> None:
        """Create the report directory"""
        try:
            settings.OUTPUT_PATH.mkdir(parents=True, exist_ok=True)
            logger.debug(f"Reports go to {settings.OUTPUT_PATH}")

        except OSError as e:
            logger.error(f"Failed to create {settings.OUTPUT_PATH}: {e}")
            raise

    @inject
    def _log_settings(
        self,
        settings: Settings = Provide[Container.settings],
        logger: Logger = Provide[Container.logger],
    ) -> None:
        logger.debug(f"Settings: {settings.model_dump()}")

    def setup(self) -> None:
        self.container.wire(modules=[__name__, *COMMAND_MODULES])

        self._setup_volumes()
        self._log_settings()

    def cleanup_resources(self) -> None:
        self.container.unwire()
