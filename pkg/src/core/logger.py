import logging
import sys

from src.core.logging_filters import RunContextFilter
from src.core.settings import Settings


class Logger(logging.Logger):
    def __init__(self, settings: Settings):
        super().__init__(settings.NAME)

        self._setup_console_handler(settings)

    def _setup_console_handler(self, settings: Settings) -> None:
        self.setLevel(settings.LOGGING_LEVEL)

        formatter = logging.Formatter(settings.LOGGING_FORMAT)
        # stdout carries command output, diagnostics go to stderr
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(settings.LOGGING_LEVEL)
        console_handler.setFormatter(formatter)
        console_handler.addFilter(RunContextFilter(settings.GRID_POINTS, settings.SEED))
        self.addHandler(console_handler)
