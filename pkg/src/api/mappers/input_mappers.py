import json
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel

from src.algebra.cumulants import CumulantSet
from src.algebra.scalars import parse_number
from src.api.schemas.input_schemas import CumulantsFileSchema, DistributionSpecSchema
from src.core.exceptions import IoFailure
from src.services.models.density_models import DistributionSpec

T = TypeVar("T", bound=BaseModel)


def load_schema(path: Path | str, model_class: Type[T]) -> T:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise IoFailure(f"Could not read {path}: {e}")
    try:
        return model_class.model_validate(json.loads(text))
    except json.JSONDecodeError as e:
        raise IoFailure(f"{path} is not valid JSON: {e}")


def to_distribution_spec(schema: DistributionSpecSchema) -> DistributionSpec:
    return DistributionSpec(
        family=schema.family.value,
        weights=tuple(schema.weights) if schema.weights is not None else None,
        means=tuple(schema.means) if schema.means is not None else None,
        variances=tuple(schema.variances) if schema.variances is not None else None,
        atoms=tuple(schema.atoms) if schema.atoms is not None else None,
        table_path=schema.table_path,
    )


def to_cumulant_set(schema: CumulantsFileSchema) -> CumulantSet:
    values = {r: parse_number(v) for r, v in schema.cumulants.items()}
    return CumulantSet.from_values(values, max_order=schema.max_order)
