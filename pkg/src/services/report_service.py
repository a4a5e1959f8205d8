from collections.abc import Sequence
from pathlib import Path
from typing import Literal, Type, TypeVar

from pydantic import BaseModel

from src.core.logger import Logger
from src.core.settings import Settings
from src.services.mappers.report_mapper import ROW_MAPPERS
from src.services.models.experiment_models import ExperimentTable
from src.storage.repositories.base_repository import BaseReportRepository
from src.storage.repositories.csv_report_repository import CsvReportRepository
from src.storage.repositories.jsonl_report_repository import JsonLinesReportRepository

ReportFormat = Literal["csv", "json-lines"]
T = TypeVar("T", bound=BaseModel)


class ReportService:
    def __init__(
        self,
        logger: Logger,
        settings: Settings,
        csv_report_repository: CsvReportRepository,
        jsonl_report_repository: JsonLinesReportRepository,
    ) -> None:
        self.logger = logger
        self.settings = settings

        self.repositories: dict[str, BaseReportRepository] = {
            "csv": csv_report_repository,
            "json-lines": jsonl_report_repository,
        }

    def _repository(self, format: ReportFormat) -> BaseReportRepository:
        if format not in self.repositories:
            raise ValueError(f"Unknown report format {format!r}, expected one of {list(self.repositories)}")
        return self.repositories[format]

    def emit_report(
        self,
        table: ExperimentTable,
        format: ReportFormat = "csv",
        path: Path | str | None = None,
    ) -> Path:
        mapper, document_class = ROW_MAPPERS[table.kind]
        repository = self._repository(format)
        target = repository.resolve_path(path, table.kind.value)

        written = repository.write_all(target, [mapper(row) for row in table.rows], document_class)
        self.logger.info(f"Wrote {len(table.rows)} {table.kind.value} rows to {written}")
        return written

    def emit_documents(
        self,
        documents: Sequence[T],
        model_class: Type[T],
        stem: str,
        format: ReportFormat = "csv",
        path: Path | str | None = None,
    ) -> Path:
        repository = self._repository(format)
        target = repository.resolve_path(path, stem)
        return repository.write_all(target, documents, model_class)

    def read_documents(self, path: Path, model_class: Type[T], format: ReportFormat = "csv") -> list[T]:
        return self._repository(format).read_all(path, model_class)
