from collections.abc import Callable
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from src.core.exceptions import CalibrationFailure

# |E ρ² - 1| allowed for a mixing measure given by atoms
CALIBRATION_TOLERANCE = 1e-9


class DistributionFamily(str, Enum):
    UNIFORM = "uniform"
    CENTERED_EXPONENTIAL = "centered_exponential"
    LAPLACE = "laplace"
    GAUSSIAN = "gaussian"
    GAUSSIAN_MIXTURE = "gaussian_mixture"
    NORMAL_SCALE_MIXTURE = "normal_scale_mixture"
    TABLE = "table"


@dataclass(frozen=True)
class GridParams:
    lo: float
    hi: float
    n_points: int

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.n_points

    @property
    def x(self) -> np.ndarray:
        return self.lo + self.step * np.arange(self.n_points)

    def refined(self) -> "GridParams":
        return GridParams(lo=self.lo, hi=self.hi, n_points=2 * self.n_points)


@dataclass(frozen=True, eq=False)
class GridDensity:
    """Density sampled at x_i = lo + i h, i < n_points, with h = (hi - lo) / n_points"""

    lo: float
    hi: float
    values: np.ndarray
    clamped_mass: float = 0.0

    @property
    def n_points(self) -> int:
        return len(self.values)

    @property
    def grid(self) -> GridParams:
        return GridParams(lo=self.lo, hi=self.hi, n_points=self.n_points)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / self.n_points

    @property
    def x(self) -> np.ndarray:
        return self.lo + self.step * np.arange(self.n_points)

    @property
    def mass(self) -> float:
        return float(self.step * np.sum(self.values))

    @property
    def normalization_defect(self) -> float:
        return abs(1.0 - self.mass)

    @property
    def mean(self) -> float:
        return float(self.step * np.sum(self.x * self.values) / self.mass)

    @property
    def second_moment(self) -> float:
        return float(self.step * np.sum(self.x**2 * self.values) / self.mass)

    @property
    def variance(self) -> float:
        return self.second_moment - self.mean**2

    def moment(self, order: int) -> float:
        return float(self.step * np.sum(self.x**order * self.values) / self.mass)

    def normalized(self) -> "GridDensity":
        return GridDensity(
            lo=self.lo,
            hi=self.hi,
            values=self.values / self.mass,
            clamped_mass=self.clamped_mass,
        )

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        return np.interp(x, self.x, self.values, left=0.0, right=0.0)


@dataclass(frozen=True, eq=False)
class TruncationDecomposition:
    """p = (1 - b) ρ_1 + b ρ_2 with ρ_1, ρ_2 the normalized restrictions of p to {p <= M}, {p > M}"""

    M: float
    b: float
    rho1: GridDensity
    rho2: GridDensity
    m0: int
    # n0 > 1 when the decomposition is taken of the normalized block sum Z_{n0}
    n0: int = 1

    def reconstruct(self) -> np.ndarray:
        return (1.0 - self.b) * self.rho1.values + self.b * self.rho2.values


@dataclass(frozen=True, eq=False)
class MixingMeasure:
    """Law P of the scale ρ in a normal scale mixture ∫ φ_σ dP(σ).

    Either finitely many atoms (σ_i, w_i), or a density in σ integrated over `pieces`,
    a tuple of (a, b) intervals whose upper end may be infinite.
    """

    atoms: tuple[tuple[float, float], ...] = ()
    density: Callable[[np.ndarray], np.ndarray] | None = None
    pieces: tuple[tuple[float, float], ...] = ()
    description: str = ""
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if bool(self.atoms) == (self.density is not None):
            raise ValueError("A mixing measure needs either atoms or a density, not both")

        if self.atoms:
            if any(sigma <= 0 or weight < 0 for sigma, weight in self.atoms):
                raise ValueError(f"Atoms need σ > 0 and non-negative weights: {self.atoms}")
            total = sum(weight for _, weight in self.atoms)
            if abs(total - 1.0) > 1e-12:
                raise ValueError(f"Atom weights must sum to 1, got {total}")
            second_moment = sum(weight * sigma**2 for sigma, weight in self.atoms)
            if abs(second_moment - 1.0) > CALIBRATION_TOLERANCE:
                raise CalibrationFailure(f"Atoms must satisfy E ρ² = 1, got {second_moment}")
        elif not self.pieces or any(a <= 0 or b <= a for a, b in self.pieces):
            raise ValueError(f"Density pieces must be increasing intervals in (0, ∞): {self.pieces}")

    @property
    def is_discrete(self) -> bool:
        return bool(self.atoms)

    @classmethod
    def degenerate(cls) -> "MixingMeasure":
        return cls(atoms=((1.0, 1.0),), description="ρ ≡ 1")


@dataclass(frozen=True)
class DistributionSpec:
    """Input description of a summand law; parameters depend on the family"""

    family: str
    weights: tuple[Any, ...] | None = None
    means: tuple[Any, ...] | None = None
    variances: tuple[Any, ...] | None = None
    atoms: tuple[tuple[float, float], ...] | None = None
    table_path: str | None = None
