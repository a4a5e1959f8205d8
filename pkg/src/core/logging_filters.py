from logging import Filter, LogRecord
from typing import Any


class RunContextFilter(Filter):
    """Stamps every record with the grid size and seed, so logs of two runs can be told apart"""

    def __init__(self, grid_points: int, seed: int, *args: Any, **kwargs: Any):
        super().__init__(*args, **kwargs)
        self._grid_points = grid_points
        self._seed = seed

    def filter(self, record: LogRecord) -> bool:
        record.grid_points = self._grid_points
        record.seed = self._seed
        return True
