from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as P

from src.algebra.multiindex import MultiIndex
from src.core.exceptions import DimensionMismatch


@dataclass(frozen=True)
class HermitePoly:
    """Monic probabilists' Hermite polynomial, coefficients in ascending powers of x"""

    order: int
    coeffs: tuple[int, ...]

    def __call__(self, x: float | np.ndarray) -> float | np.ndarray:
        return P.polyval(x, np.asarray(self.coeffs, dtype=float))


def _exact_series(a: Sequence) -> np.ndarray:
    return np.array(list(a), dtype=object)


def poly_mul(a: Sequence, b: Sequence) -> list:
    """Product of two ascending coefficient lists, exact for int/Fraction entries"""
    if len(a) == 0 or len(b) == 0:
        return []
    return list(P.polymul(_exact_series(a), _exact_series(b)))


def poly_add(a: Sequence, b: Sequence) -> list:
    if len(a) == 0 or len(b) == 0:
        return list(a) or list(b)
    return list(P.polyadd(_exact_series(a), _exact_series(b)))


@lru_cache(maxsize=None)
def hermite_poly(k: int) -> HermitePoly:
    if k < 0:
        raise ValueError(f"Hermite order must be non-negative, got {k}")
    if k == 0:
        return HermitePoly(order=0, coeffs=(1,))
    if k == 1:
        return HermitePoly(order=1, coeffs=(0, 1))

    # H_k = x H_{k-1} - (k-1) H_{k-2}
    shifted = (0,) + hermite_poly(k - 1).coeffs
    previous = hermite_poly(k - 2).coeffs
    coeffs = [
        c - (k - 1) * (previous[i] if i < len(previous) else 0)
        for i, c in enumerate(shifted)
    ]
    return HermitePoly(order=k, coeffs=tuple(coeffs))


@lru_cache(maxsize=None)
def gaussian_moment(k: int) -> int:
    if k < 0:
        raise ValueError(f"Moment order must be non-negative, got {k}")
    if k % 2:
        return 0

    value = 1
    for i in range(k - 1, 0, -2):
        value *= i
    return value


def gaussian_expectation(coeffs: Sequence) -> Fraction | int | float:
    """E p(Z) for a polynomial p given by ascending monomial coefficients"""
    return sum(
        (c * gaussian_moment(i) for i, c in enumerate(coeffs) if c != 0 and i % 2 == 0),
        0,
    )


def hermite_product_expectation(orders: Sequence[int]) -> int:
    if not orders:
        raise ValueError("Hermite product needs at least one order")
    if any(r < 0 for r in orders):
        raise ValueError(f"Hermite orders must be non-negative, got {list(orders)}")
    return _hermite_product_expectation(tuple(sorted(orders)))


@lru_cache(maxsize=65536)
def _hermite_product_expectation(orders: tuple[int, ...]) -> int:
    if sum(orders) % 2:
        return 0

    product: list = [1]
    for r in orders:
        if r:
            product = poly_mul(product, hermite_poly(r).coeffs)
    return gaussian_expectation(product)


def hermite_multi_eval(nu: MultiIndex, x: Sequence[float] | np.ndarray) -> float:
    x = np.asarray(x, dtype=float)
    if x.shape != (nu.dimension,):
        raise DimensionMismatch(
            f"Multi-index {nu.components} has dimension {nu.dimension}, "
            f"point has shape {x.shape}"
        )

    return float(
        np.prod([hermite_poly(k)(xi) for k, xi in zip(nu.components, x)])
    )
