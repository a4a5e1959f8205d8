from math import comb, factorial

import numpy as np

from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily


class CenteredExponentialDistribution(BaseDistribution):
    """E - 1 with E ~ Exp(1)"""

    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.CENTERED_EXPONENTIAL

    @property
    def description(self) -> str:
        return "exponential(1) shifted to mean 0"

    def pdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return np.where(x >= -1.0, np.exp(-(np.maximum(x, -1.0) + 1.0)), 0.0)

    def moments(self, max_order: int) -> list[Number]:
        # E (E - 1)^r = Σ_i C(r, i) i! (-1)^{r-i}
        return [
            sum(comb(r, i) * factorial(i) * (-1) ** (r - i) for i in range(r + 1))
            for r in range(1, max_order + 1)
        ]

    def cf(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(-1j * t) / (1.0 - 1j * t)
