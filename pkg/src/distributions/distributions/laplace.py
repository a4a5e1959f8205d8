from fractions import Fraction
from math import factorial

import numpy as np

from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily

SQRT2 = np.sqrt(2.0)


class LaplaceDistribution(BaseDistribution):
    """Laplace law with scale 1/√2"""

    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.LAPLACE

    @property
    def description(self) -> str:
        return "laplace with scale 1/√2"

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.exp(-SQRT2 * np.abs(x)) / SQRT2

    def moments(self, max_order: int) -> list[Number]:
        # E X^{2k} = (2k)! b^{2k} with b^2 = 1/2
        return [
            Fraction(factorial(r), 2 ** (r // 2)) if r % 2 == 0 else 0
            for r in range(1, max_order + 1)
        ]

    def cf(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return (1.0 / (1.0 + 0.5 * t**2)).astype(complex)
