from fractions import Fraction

import numpy as np

from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily

SQRT3 = np.sqrt(3.0)


class UniformDistribution(BaseDistribution):
    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.UNIFORM

    @property
    def description(self) -> str:
        return "uniform on [-√3, √3]"

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.where(np.abs(x) <= SQRT3, 1.0 / (2.0 * SQRT3), 0.0)

    def moments(self, max_order: int) -> list[Number]:
        # E X^{2k} = 3^k / (2k + 1)
        return [
            Fraction(3 ** (r // 2), r + 1) if r % 2 == 0 else 0
            for r in range(1, max_order + 1)
        ]

    def cf(self, t: np.ndarray) -> np.ndarray:
        return np.sinc(SQRT3 * np.asarray(t, dtype=float) / np.pi).astype(complex)
