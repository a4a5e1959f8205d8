from pydantic import BaseModel, Field, field_validator

from src.algebra.scalars import parse_number
from src.services.models.density_models import DistributionFamily

# Exact input values: integers, decimal strings or "p/q" rationals
ExactValue = int | str


def _check_exact(value: ExactValue) -> ExactValue:
    parse_number(value)
    return value


class DistributionSpecSchema(BaseModel):
    family: DistributionFamily = Field(..., description="Summand family, e.g. 'laplace'")
    weights: list[ExactValue] | None = Field(
        default=None, description="gaussian_mixture component weights"
    )
    means: list[ExactValue] | None = Field(
        default=None, description="gaussian_mixture component means"
    )
    variances: list[ExactValue] | None = Field(
        default=None, description="gaussian_mixture component variances"
    )
    atoms: list[tuple[float, float]] | None = Field(
        default=None, description="normal_scale_mixture atoms as [sigma, weight] pairs"
    )
    table_path: str | None = Field(default=None, description="Grid density file for the table family")

    @field_validator("weights", "means", "variances")
    @classmethod
    def validate_exact_values(cls, values: list[ExactValue] | None) -> list[ExactValue] | None:
        if values is not None:
            for value in values:
                _check_exact(value)
        return values

    @field_validator("atoms")
    @classmethod
    def validate_atoms(cls, atoms: list[tuple[float, float]] | None) -> list[tuple[float, float]] | None:
        if atoms is not None:
            for sigma, weight in atoms:
                if sigma < 0 or weight < 0:
                    raise ValueError(f"Atoms need sigma >= 0 and weight >= 0, got ({sigma}, {weight})")
        return atoms


class CumulantsFileSchema(BaseModel):
    max_order: int | None = Field(
        default=None, description="Highest order available, defaults to the largest key", ge=2
    )
    cumulants: dict[int, ExactValue] = Field(
        ..., description="Standardized cumulants by order, e.g. {'3': '2', '4': '6'}"
    )

    @field_validator("cumulants")
    @classmethod
    def validate_cumulants(cls, cumulants: dict[int, ExactValue]) -> dict[int, ExactValue]:
        for r, value in cumulants.items():
            if r < 1:
                raise ValueError(f"Cumulant orders start at 1, got {r}")
            parsed = parse_number(value)
            if r == 1 and parsed != 0:
                raise ValueError(f"γ_1 must be 0 for a standardized law, got {value}")
            if r == 2 and parsed != 1:
                raise ValueError(f"γ_2 must be 1 for a standardized law, got {value}")
        return cumulants

