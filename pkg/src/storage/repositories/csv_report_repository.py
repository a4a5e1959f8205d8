import csv
from pathlib import Path
from typing import Any

from src.core.settings import Settings
from src.storage.repositories.base_repository import BaseReportRepository


class CsvReportRepository(BaseReportRepository):
    @property
    def format_name(self) -> str:
        return "csv"

    @property
    def file_extension(self) -> str:
        return "csv"

    def __init__(self, settings: Settings):
        super().__init__(settings=settings)

    def _write(self, path: Path, columns: list[str], records: list[dict[str, Any]]) -> None:
        with path.open("w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            for record in records:
                writer.writerow(
                    {
                        key: "" if value is None else str(value).lower() if isinstance(value, bool) else value
                        for key, value in record.items()
                    }
                )

    def _read(self, path: Path) -> list[dict[str, Any]]:
        with path.open(newline="", encoding="utf-8") as f:
            return list(csv.DictReader(f))
