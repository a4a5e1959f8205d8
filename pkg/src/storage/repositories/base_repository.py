import math
from abc import ABC, abstractmethod
from collections.abc import Sequence
from pathlib import Path
from typing import Any, Type, TypeVar

from pydantic import BaseModel

from src.core.exceptions import IoFailure
from src.core.settings import Settings

T = TypeVar("T", bound=BaseModel)


class BaseReportRepository(ABC):
    @property
    @abstractmethod
    def format_name(self) -> str: ...

    @property
    @abstractmethod
    def file_extension(self) -> str: ...

    def __init__(self, settings: Settings):
        self.settings = settings

    @abstractmethod
    def _write(self, path: Path, columns: list[str], records: list[dict[str, Any]]) -> None: ...

    @abstractmethod
    def _read(self, path: Path) -> list[dict[str, Any]]: ...

    def _to_record(self, model: BaseModel) -> dict[str, Any]:
        """Convert a document to a flat record with report-formatted values"""
        return {key: self._format_value(value) for key, value in model.model_dump().items()}

    def _format_value(self, value: Any) -> Any:
        if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
            return value
        if isinstance(value, float):
            if math.isnan(value):
                return None
            return f"{value:.{self.settings.REPORT_DIGITS}g}"
        return str(value)

    def resolve_path(self, path: Path | str | None, stem: str) -> Path:
        if path is None:
            return self.settings.OUTPUT_PATH.joinpath(f"{stem}.{self.file_extension}")
        return Path(path)

    def write_all(self, path: Path, documents: Sequence[T], model_class: Type[T]) -> Path:
        columns = list(model_class.model_fields)
        records = [self._to_record(document) for document in documents]
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            self._write(path, columns, records)
        except OSError as e:
            raise IoFailure(f"Could not write {self.format_name} report {path}: {e}")
        return path

    def read_all(self, path: Path, model_class: Type[T]) -> list[T]:
        try:
            records = self._read(path)
        except OSError as e:
            raise IoFailure(f"Could not read {self.format_name} report {path}: {e}")
        return [
            model_class(**{key: value for key, value in record.items() if value not in ("", None)})
            for record in records
        ]
