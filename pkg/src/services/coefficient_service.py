from fractions import Fraction
from math import factorial, floor, log
from typing import Any

import numpy as np
from numpy.polynomial.hermite_e import hermeval, hermegauss

from src.algebra.cumulant_polynomial import CumulantPolynomial
from src.algebra.cumulants import CumulantSet, CumulantTensor
from src.algebra.hermite import gaussian_expectation, poly_add, poly_mul
from src.algebra.multiindex import multiindex_enumerate
from src.algebra.scalars import is_exact
from src.core.exceptions import InsufficientNodes, OrderOutOfRange
from src.core.logger import Logger
from src.core.settings import Settings
from src.edgeworth.corrections import (
    HermiteBasisFunction,
    build_qk,
    build_qk_multi,
    mixed_integral,
)
from src.edgeworth.partitions import grouped_compositions
from src.services.models.coefficient_models import (
    CoeffPolynomial,
    ExpansionPrediction,
    SpecialCaseCoefficient,
)


def _outer_weight(k: int) -> Fraction:
    return Fraction((-1) ** k, k * (k - 1))


class CoefficientService:
    def __init__(self, logger: Logger, settings: Settings) -> None:
        self.logger = logger
        self.settings = settings

    # Expansion coefficients c_j
    def _sum_over_compositions(
        self, corrections: dict[int, HermiteBasisFunction], j: int
    ) -> Any:
        """Σ_{k=2}^{2j} (-1)^k/(k(k-1)) Σ_{r_1+...+r_k=2j} ∫ q_{r_1}...q_{r_k} φ^{1-k}"""
        total: Any = 0
        for k in range(2, 2 * j + 1):
            inner: Any = 0
            for parts, orderings in grouped_compositions(2 * j, k):
                value = mixed_integral([corrections[r] for r in parts])
                inner = inner + value * orderings
            total = total + inner * _outer_weight(k)
        return total

    def cj_exact(self, c: CumulantSet, j: int) -> Any:
        if j < 1:
            raise OrderOutOfRange(f"Coefficient index j must be >= 1, got {j}")
        c.require(2 * j + 1)

        truncated = c.truncated(2 * j + 1)
        corrections = {r: build_qk(truncated, r) for r in range(1, 2 * j)}
        value = self._sum_over_compositions(corrections, j)

        self.logger.debug(f"c_{j} = {value} for cumulants {dict(c.gamma)}")
        return value

    def cj_symbolic(self, j: int, d: int = 1) -> CoeffPolynomial:
        if j < 1 or d < 1:
            raise OrderOutOfRange(f"Need j >= 1 and d >= 1, got j={j}, d={d}")
        if d > 1 and (d > self.settings.MULTI_DIM_MAX_D or j > self.settings.MULTI_DIM_MAX_J):
            raise OrderOutOfRange(
                f"Multidimensional coefficients are capped at d <= {self.settings.MULTI_DIM_MAX_D}, "
                f"j <= {self.settings.MULTI_DIM_MAX_J}, got d={d}, j={j}"
            )

        max_order = 2 * j + 1
        symbols = CumulantTensor(
            dimension=d,
            max_order=max_order,
            gamma={
                nu: CumulantPolynomial.variable(nu)
                for order in range(3, max_order + 1)
                for nu in multiindex_enumerate(d, order)
            },
        )
        corrections = {r: build_qk_multi(symbols, r) for r in range(1, 2 * j)}
        value = self._sum_over_compositions(corrections, j)

        if not isinstance(value, CumulantPolynomial):
            value = CumulantPolynomial.constant(value)
        self.logger.debug(f"Symbolic c_{j} in dimension {d}: {len(value.terms)} terms")
        return CoeffPolynomial(j=j, dimension=d, polynomial=value)

    def cj_quadrature(self, c: CumulantSet, j: int, nodes: int | None = None) -> float:
        nodes = self.settings.QUADRATURE_NODES if nodes is None else nodes
        if j < 1:
            raise OrderOutOfRange(f"Coefficient index j must be >= 1, got {j}")
        # the integrand has degree at most 6j, Gauss rules are exact up to 2 nodes - 1
        if nodes < 3 * j + 1:
            raise InsufficientNodes(
                f"c_{j} needs nodes >= 3j + 1 = {3 * j + 1} Gauss-Hermite nodes "
                f"(its integrand has degree 6j = {6 * j}), got {nodes}"
            )
        c.require(2 * j + 1)

        x, w = hermegauss(nodes)
        w = w / np.sqrt(2.0 * np.pi)

        truncated = c.truncated(2 * j + 1)
        factors = {
            r: hermeval(x, build_qk(truncated, r).dense_coefficients()) for r in range(1, 2 * j)
        }

        total = 0.0
        for k in range(2, 2 * j + 1):
            inner = 0.0
            for parts, orderings in grouped_compositions(2 * j, k):
                integrand = np.prod([factors[r] for r in parts], axis=0)
                inner += orderings * float(np.dot(w, integrand))
            total += float(_outer_weight(k)) * inner
        return total

    def special_case_coefficient(self, k: int) -> SpecialCaseCoefficient:
        if k < 3:
            raise OrderOutOfRange(f"Special case needs k >= 3, got {k}")

        closed_form = SpecialCaseCoefficient(k=k, factor=Fraction(1, 2 * factorial(k)))

        # with only γ_k = 1 the exact coefficient must equal the closed form factor
        j = k - 2
        unit = CumulantSet(max_order=max(k, 2 * j + 1), gamma={k: 1})
        exact = self.cj_exact(unit, j)
        if exact != closed_form.factor:
            raise ArithmeticError(
                f"c_{j} with only γ_{k} = 1 is {exact}, expected {closed_form.factor}"
            )
        return closed_form

    # Finite-n functional
    def theorem51_series(self, c: CumulantSet, s: float) -> dict[int, Any]:
        """Coefficients of Σ_{k=2}^{m-2} (-1)^k/(k(k-1)) ∫ (φ_m - φ)^k φ^{1-k} in powers of 1/n"""
        m = floor(s)
        if m < 4:
            return {}
        c.require(m)

        truncated = c.truncated(m)
        # φ_m - φ = φ U with U = Σ_r N_r ε^r and ε = n^{-1/2}
        base = {
            r: build_qk(truncated, r).monomial_coefficients() for r in range(1, m - 1)
        }

        series: dict[int, Any] = {}
        power: dict[int, list] = dict(base)
        for k in range(2, m - 1):
            power = self._multiply_series(power, base)
            weight = _outer_weight(k)
            for p, polynomial in power.items():
                series[p] = series.get(p, 0) + weight * gaussian_expectation(polynomial)

        for p, value in series.items():
            if p % 2 and value != 0 and (is_exact(value) or abs(value) > 1e-12):
                raise ArithmeticError(
                    f"Odd power n^(-{p}/2) has non-zero coefficient {value}"
                )
        return {p // 2: value for p, value in sorted(series.items()) if p % 2 == 0}

    @staticmethod
    def _multiply_series(a: dict[int, list], b: dict[int, list]) -> dict[int, list]:
        out: dict[int, list] = {}
        for p, left in a.items():
            for q, right in b.items():
                out[p + q] = poly_add(out.get(p + q, []), poly_mul(left, right))
        return out

    def theorem51_functional(self, c: CumulantSet, s: float, n: int) -> Any:
        if n < 1:
            raise ValueError(f"Number of summands must be >= 1, got {n}")
        series = self.theorem51_series(c, s)
        if c.is_exact:
            return sum((value * Fraction(1, n**j) for j, value in series.items()), Fraction(0))
        return sum(float(value) * n ** (-j) for j, value in series.items())

    # Predictions
    @staticmethod
    def delta_n(s: float, n: int, d: int = 1) -> float:
        if s == 2:
            return 1.0
        return n ** (-(s - 2) / 2) * log(n) ** (-(s - max(d, 2)) / 2)

    def expansion_prediction(self, c: CumulantSet, s: float, n: int, d: int = 1) -> ExpansionPrediction:
        if n < 2:
            raise ValueError(f"Prediction needs n >= 2, got {n}")
        order = floor((s - 2) / 2)
        coefficients = tuple(self.cj_exact(c, j) for j in range(1, order + 1))
        value = sum(float(cj) * n ** (-j) for j, cj in enumerate(coefficients, start=1))
        return ExpansionPrediction(
            s=s,
            n=n,
            coefficients=coefficients,
            value=float(value),
            delta_n=self.delta_n(s, n, d),
        )
