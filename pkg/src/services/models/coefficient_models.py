from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from src.algebra.cumulant_polynomial import CumulantPolynomial
from src.algebra.multiindex import MultiIndex


@dataclass(frozen=True)
class CoeffPolynomial:
    """c_j as an exact polynomial in the cumulant symbols of a d-dimensional law"""

    j: int
    dimension: int
    polynomial: CumulantPolynomial

    @property
    def terms(self) -> dict[tuple[MultiIndex, ...], Fraction]:
        return self.polynomial.terms

    @property
    def max_cumulant_order(self) -> int:
        return max((symbol.norm for symbol in self.polynomial.symbols), default=0)

    def evaluate(self, values: dict[MultiIndex, Any]) -> Any:
        return self.polynomial.evaluate(values)

    def to_text(self) -> str:
        return self.polynomial.to_text()


@dataclass(frozen=True)
class SpecialCaseCoefficient:
    """c_{k-2} = γ_k² / (2 k!) when γ_3 = ... = γ_{k-1} = 0"""

    k: int
    factor: Fraction

    @property
    def j(self) -> int:
        return self.k - 2

    def __call__(self, gamma_k: Any) -> Any:
        return self.factor * gamma_k**2


@dataclass(frozen=True)
class ExpansionPrediction:
    s: float
    n: int
    coefficients: tuple[Any, ...]
    value: float
    delta_n: float

    @property
    def order(self) -> int:
        return len(self.coefficients)
