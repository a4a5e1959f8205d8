import numpy as np

from src.algebra.hermite import gaussian_moment
from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily
from src.utils.normal_utils import std_normal_pdf


class GaussianDistribution(BaseDistribution):
    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.GAUSSIAN

    @property
    def description(self) -> str:
        return "standard normal"

    @property
    def is_gaussian(self) -> bool:
        return True

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return std_normal_pdf(np.asarray(x, dtype=float))

    def moments(self, max_order: int) -> list[Number]:
        return [gaussian_moment(r) for r in range(1, max_order + 1)]

    def cf(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.exp(-0.5 * t**2).astype(complex)
