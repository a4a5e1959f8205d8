import json
from pathlib import Path
from typing import Any

from src.core.settings import Settings
from src.storage.repositories.base_repository import BaseReportRepository


class JsonLinesReportRepository(BaseReportRepository):
    @property
    def format_name(self) -> str:
        return "json-lines"

    @property
    def file_extension(self) -> str:
        return "jsonl"

    def __init__(self, settings: Settings):
        super().__init__(settings=settings)

    def _format_value(self, value: Any) -> Any:
        # numbers stay JSON numbers, printed with the report precision
        formatted = super()._format_value(value)
        if isinstance(value, float) and formatted is not None:
            return float(formatted) if formatted not in ("inf", "-inf") else None
        return formatted

    def _write(self, path: Path, columns: list[str], records: list[dict[str, Any]]) -> None:
        with path.open("w", newline="\n", encoding="utf-8") as f:
            for record in records:
                f.write(json.dumps({key: record[key] for key in columns}, ensure_ascii=False))
                f.write("\n")

    def _read(self, path: Path) -> list[dict[str, Any]]:
        with path.open(encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]
