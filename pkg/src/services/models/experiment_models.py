from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Generic, TypeVar


class ExperimentKind(str, Enum):
    CONVERGE = "converge"
    COROLLARY12 = "corollary12"
    LOWERBOUND = "lowerbound"
    CONDITION81 = "check81"


@dataclass
class ConvergenceRow:
    n: int
    D_n: float
    prediction: float
    residual: float
    scaled_residual: float
    delta_n: float
    T_used: float
    tail_second_moment: float
    clamped_mass: float
    grid_drift: float | None = None
    valid: bool = True
    error: str | None = None


@dataclass
class Corollary12Row:
    n: int
    D_n: float
    scaled_D_n: float
    limit: float
    ratio: float
    valid: bool = True
    error: str | None = None


@dataclass
class LowerBoundRow:
    n: int
    D_n: float
    bound: float
    ratio: float
    theorem13_scale: float
    fitted_constant: float | None = None
    # D_n >= fitted_constant * bound / 2, None until a constant is fitted
    above_half_bound: bool | None = None
    valid: bool = True
    error: str | None = None


@dataclass
class Condition81Row:
    n: int
    lower_limit: float
    value: float


R = TypeVar("R")


@dataclass
class ExperimentTable(Generic[R]):
    kind: ExperimentKind
    rows: list[R]
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def valid_rows(self) -> list[R]:
        return [row for row in self.rows if getattr(row, "valid", True)]
