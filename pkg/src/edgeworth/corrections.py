import itertools
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Any

import numpy as np
from numpy.polynomial.hermite_e import hermeval

from src.algebra.cumulants import CumulantSet, CumulantTensor
from src.algebra.hermite import (
    hermite_multi_eval,
    hermite_poly,
    hermite_product_expectation,
    poly_add,
)
from src.algebra.multiindex import MultiIndex, multiindex_enumerate
from src.core.exceptions import DimensionMismatch, OrderOutOfRange
from src.edgeworth.partitions import weighted_partitions
from src.utils.normal_utils import std_normal_pdf

HermiteKey = int | MultiIndex


@dataclass(frozen=True)
class HermiteBasisFunction:
    """f(x) = φ(x) Σ a_r H_r(x); keys are orders in one dimension, multi-indices otherwise"""

    dimension: int = 1
    coeffs: Mapping[HermiteKey, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", {key: a for key, a in self.coeffs.items() if a != 0}
        )
        for key in self.coeffs:
            if _components(key, self.dimension) is None:
                raise DimensionMismatch(
                    f"Hermite key {key} does not fit dimension {self.dimension}"
                )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def orders(self) -> list[int]:
        return sorted({sum(_components(key, self.dimension)) for key in self.coeffs})

    @property
    def max_order(self) -> int:
        return max(self.orders, default=0)

    def mass(self) -> Any:
        """∫ f, which is the H_0 coefficient since ∫ H_r φ = 0 for r > 0"""
        zero = 0 if self.dimension == 1 else MultiIndex((0,) * self.dimension)
        return self.coeffs.get(zero, 0)

    def scaled(self, factor: Any) -> "HermiteBasisFunction":
        return HermiteBasisFunction(
            dimension=self.dimension,
            coeffs={key: a * factor for key, a in self.coeffs.items()},
        )

    def dense_coefficients(self) -> np.ndarray:
        self._require_one_dimensional()
        dense = np.zeros(self.max_order + 1)
        for order, a in self.coeffs.items():
            dense[order] = float(a)
        return dense

    def monomial_coefficients(self) -> list:
        """Exact ascending monomial coefficients of the polynomial factor N = f/φ"""
        self._require_one_dimensional()
        coeffs: list = []
        for order, a in sorted(self.coeffs.items()):
            coeffs = poly_add(coeffs, [a * c for c in hermite_poly(order).coeffs])
        return coeffs

    def polynomial_factor(self, x: float | np.ndarray) -> float | np.ndarray:
        return hermeval(x, self.dense_coefficients())

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        return self.polynomial_factor(x) * std_normal_pdf(x)

    def evaluate_multi(self, x: Sequence[float]) -> float:
        x = np.asarray(x, dtype=float)
        total = sum(
            float(a) * hermite_multi_eval(_as_multiindex(key, self.dimension), x)
            for key, a in self.coeffs.items()
        )
        return total * float(np.prod(std_normal_pdf(x)))

    def _require_one_dimensional(self) -> None:
        if self.dimension != 1:
            raise DimensionMismatch(
                f"Operation defined for one dimension only, function has dimension {self.dimension}"
            )


@dataclass(frozen=True)
class CumulantPolynomialPk:
    """P_k as a polynomial in the vector variable it, coefficient per monomial (it)^ν"""

    dimension: int
    coeffs: Mapping[MultiIndex, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "coeffs", {nu: a for nu, a in self.coeffs.items() if a != 0}
        )

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, t: Sequence[float] | float) -> complex:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if t.shape != (self.dimension,):
            raise DimensionMismatch(
                f"P_k has dimension {self.dimension}, argument has shape {t.shape}"
            )
        it = 1j * t
        return complex(
            sum(
                complex(float(a)) * np.prod(it ** np.asarray(nu.components))
                for nu, a in self.coeffs.items()
            )
        )


def _components(key: HermiteKey, dimension: int) -> tuple[int, ...] | None:
    if isinstance(key, MultiIndex):
        return key.components if key.dimension == dimension else None
    return (key,) if dimension == 1 and key >= 0 else None


def _as_multiindex(key: HermiteKey, dimension: int) -> MultiIndex:
    return key if isinstance(key, MultiIndex) else MultiIndex((key,))


def _check_order(k: int, max_order: int) -> None:
    if not 1 <= k <= max_order - 2:
        raise OrderOutOfRange(
            f"Correction order k={k} needs 1 <= k <= m-2 with m={max_order}"
        )


def _partition_coefficients(c: CumulantSet, k: int) -> dict[int, Any]:
    """Coefficient of each partition grouped by j, before choosing the Hermite order"""
    by_j: dict[int, Any] = {}
    for partition in weighted_partitions(k):
        term: Any = 1
        for i, ri in enumerate(partition.r, start=1):
            if ri:
                term = term * (c[i + 2] * Fraction(1, factorial(i + 2))) ** ri
                term = term * Fraction(1, factorial(ri))
        by_j[partition.j] = by_j.get(partition.j, 0) + term
    return by_j


def build_qk(c: CumulantSet, k: int) -> HermiteBasisFunction:
    _check_order(k, c.max_order)
    return HermiteBasisFunction(
        coeffs={k + 2 * j: a for j, a in _partition_coefficients(c, k).items()}
    )


def build_Qk(c: CumulantSet, k: int) -> HermiteBasisFunction:
    _check_order(k, c.max_order)
    return HermiteBasisFunction(
        coeffs={k + 2 * j - 1: -a for j, a in _partition_coefficients(c, k).items()}
    )


def _poly_multiply(
    a: Mapping[MultiIndex, Any], b: Mapping[MultiIndex, Any]
) -> dict[MultiIndex, Any]:
    out: dict[MultiIndex, Any] = {}
    for nu, x in a.items():
        for mu, y in b.items():
            key = nu + mu
            out[key] = out.get(key, 0) + x * y
    return out


def build_Pk_multi(c: CumulantTensor, k: int) -> CumulantPolynomialPk:
    _check_order(k, c.max_order)
    d = c.dimension
    one = {MultiIndex((0,) * d): 1}

    # S_r = γ_{r+2}(it)/(r+2)! = Σ_{|ν|=r+2} γ_ν (it)^ν / ν!
    s_terms = {
        r: {nu: c[nu] * Fraction(1, nu.factorial) for nu in multiindex_enumerate(d, r + 2)}
        for r in range(1, k + 1)
    }

    total: dict[MultiIndex, Any] = {}
    for partition in weighted_partitions(k):
        term = dict(one)
        for r, lr in enumerate(partition.r, start=1):
            for _ in range(lr):
                term = _poly_multiply(term, s_terms[r])
            if lr:
                term = {nu: v * Fraction(1, factorial(lr)) for nu, v in term.items()}
        for nu, v in term.items():
            total[nu] = total.get(nu, 0) + v
    return CumulantPolynomialPk(dimension=d, coeffs=total)


def build_qk_multi(c: CumulantTensor, k: int) -> HermiteBasisFunction:
    """q_k with a_ν equal to the (it)^ν coefficient of P_k"""
    pk = build_Pk_multi(c, k)
    if c.dimension == 1:
        coeffs: dict[HermiteKey, Any] = {nu.components[0]: a for nu, a in pk.coeffs.items()}
    else:
        coeffs = dict(pk.coeffs)
    return HermiteBasisFunction(dimension=c.dimension, coeffs=coeffs)


def mixed_integral(functions: Sequence[HermiteBasisFunction]) -> Any:
    """∫ f_1 ... f_k φ^{1-k}, i.e. E[N_1(Z) ... N_k(Z)] with f_i = N_i φ"""
    if not functions:
        raise ValueError("Mixed integral needs at least one function")
    dimension = functions[0].dimension
    if any(f.dimension != dimension for f in functions):
        raise DimensionMismatch("Mixed integral over functions of different dimensions")

    total: Any = 0
    for combination in itertools.product(*(f.coeffs.items() for f in functions)):
        keys = [_components(key, dimension) for key, _ in combination]
        if sum(map(sum, keys)) % 2:
            continue
        expectation = prod(
            hermite_product_expectation(list(axis_orders)) for axis_orders in zip(*keys)
        )
        if expectation == 0:
            continue
        coefficient: Any = 1
        for _, a in combination:
            coefficient = coefficient * a
        total = total + coefficient * expectation
    return total
