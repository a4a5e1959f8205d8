from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Any

from src.algebra.multiindex import MultiIndex
from src.algebra.scalars import Number, is_exact
from src.core.exceptions import (
    DimensionMismatch,
    InsufficientCumulants,
    NonStandardized,
)

STANDARDIZATION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CumulantSet:
    """Standardized cumulants γ_3..γ_m of a one-dimensional law, γ_1 = 0 and γ_2 = 1 implied"""

    max_order: int
    gamma: Mapping[int, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.max_order < 2:
            raise ValueError(f"max_order must be >= 2, got {self.max_order}")
        for r in self.gamma:
            if not 3 <= r <= self.max_order:
                raise ValueError(
                    f"Cumulant order {r} outside the stored range 3..{self.max_order}"
                )

    def __getitem__(self, r: int) -> Any:
        if r == 1:
            return 0
        if r == 2:
            return 1
        if r > self.max_order:
            raise InsufficientCumulants(
                f"Cumulant γ_{r} requested but only orders up to {self.max_order} are known"
            )
        return self.gamma.get(r, 0)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(v) for v in self.gamma.values())

    def require(self, order: int) -> None:
        if order > self.max_order:
            raise InsufficientCumulants(
                f"Cumulants up to order {order} needed, only {self.max_order} available"
            )

    def truncated(self, max_order: int) -> "CumulantSet":
        self.require(max_order)
        return CumulantSet(
            max_order=max_order,
            gamma={r: v for r, v in self.gamma.items() if r <= max_order},
        )

    def as_tensor(self) -> "CumulantTensor":
        return CumulantTensor(
            dimension=1,
            max_order=self.max_order,
            gamma={MultiIndex((r,)): v for r, v in self.gamma.items()},
        )

    @classmethod
    def from_values(cls, values: Mapping[int, Any], max_order: int | None = None) -> "CumulantSet":
        max_order = max_order if max_order is not None else max(values, default=2)
        return cls(max_order=max_order, gamma={r: v for r, v in values.items() if r >= 3})


@dataclass(frozen=True)
class CumulantTensor:
    """Cumulants γ_ν, 3 <= |ν| <= m, of a mean-zero identity-covariance vector"""

    dimension: int
    max_order: int
    gamma: Mapping[MultiIndex, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for nu in self.gamma:
            if nu.dimension != self.dimension:
                raise DimensionMismatch(
                    f"Cumulant index {nu.components} does not have dimension {self.dimension}"
                )
            if not 3 <= nu.norm <= self.max_order:
                raise ValueError(
                    f"Cumulant index {nu.components} outside the stored range 3..{self.max_order}"
                )

    def __getitem__(self, nu: MultiIndex) -> Any:
        if nu.dimension != self.dimension:
            raise DimensionMismatch(
                f"Cumulant index {nu.components} does not have dimension {self.dimension}"
            )
        if nu.norm > self.max_order:
            raise InsufficientCumulants(
                f"Cumulant of order {nu.norm} requested but only orders up to "
                f"{self.max_order} are known"
            )
        return self.gamma.get(nu, 0)

    def require(self, order: int) -> None:
        if order > self.max_order:
            raise InsufficientCumulants(
                f"Cumulants up to order {order} needed, only {self.max_order} available"
            )

    @classmethod
    def product_embedding(
        cls, factors: Sequence[CumulantSet | None]
    ) -> "CumulantTensor":
        """Tensor of a vector with independent coordinates, None marking a standard normal coordinate"""
        dimension = len(factors)
        max_order = min((f.max_order for f in factors if f is not None), default=2)
        gamma: dict[MultiIndex, Any] = {}
        for axis, factor in enumerate(factors):
            if factor is None:
                continue
            for r in range(3, max_order + 1):
                value = factor[r]
                if value != 0:
                    gamma[MultiIndex.axis(dimension, axis, r)] = value
        return cls(dimension=dimension, max_order=max_order, gamma=gamma)


def _check_standardized(mean: Number, variance: Number) -> None:
    if is_exact(mean) and is_exact(variance):
        standardized = mean == 0 and variance == 1
    else:
        standardized = (
            abs(mean) <= STANDARDIZATION_TOLERANCE
            and abs(variance - 1) <= STANDARDIZATION_TOLERANCE
        )

    if not standardized:
        raise NonStandardized(
            f"Moments are not standardized: mean={mean}, second moment={variance}"
        )


def moments_to_cumulants(moments: Sequence[Number]) -> CumulantSet:
    """γ_3..γ_m from raw moments μ_1..μ_m of a standardized law"""
    if len(moments) < 2:
        raise ValueError(f"Need at least μ_1 and μ_2, got {len(moments)} moments")

    mu = [1, *(Fraction(v) if isinstance(v, int) else v for v in moments)]
    _check_standardized(mu[1], mu[2])

    kappa: list[Any] = [0] * len(mu)
    for m in range(1, len(mu)):
        kappa[m] = mu[m] - sum(
            comb(m - 1, k - 1) * kappa[k] * mu[m - k] for k in range(1, m)
        )

    max_order = len(moments)
    return CumulantSet(
        max_order=max_order,
        gamma={r: _normalize(kappa[r]) for r in range(3, max_order + 1)},
    )


def cumulants_to_moments(c: CumulantSet) -> list[Any]:
    """Raw moments μ_1..μ_m of the standardized law with cumulants c"""
    kappa = [0] + [c[r] for r in range(1, c.max_order + 1)]
    mu: list[Any] = [1] + [0] * c.max_order
    for m in range(1, c.max_order + 1):
        mu[m] = sum(comb(m - 1, k - 1) * kappa[k] * mu[m - k] for k in range(1, m + 1))
    return [_normalize(v) for v in mu[1:]]


def _normalize(value: Any) -> Any:
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value
