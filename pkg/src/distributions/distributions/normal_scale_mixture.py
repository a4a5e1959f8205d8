import numpy as np

from src.algebra.hermite import gaussian_moment
from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.distributions.mixing import (
    check_calibration,
    mixing_moment,
    mixture_cf_values,
    mixture_density_values,
)
from src.services.models.density_models import DistributionFamily, MixingMeasure


class NormalScaleMixtureDistribution(BaseDistribution):
    """Law of ρ Z with ρ ~ P independent of Z, P calibrated to E ρ² = 1"""

    def __init__(self, measure: MixingMeasure, rtol: float = 1e-10) -> None:
        if not measure.is_discrete:
            check_calibration(measure, rtol)
        self.measure = measure
        self.rtol = rtol

    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.NORMAL_SCALE_MIXTURE

    @property
    def description(self) -> str:
        return f"normal scale mixture, {self.measure.description or 'P'}"

    @property
    def is_gaussian(self) -> bool:
        return self.measure.is_discrete and len(self.measure.atoms) == 1

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return mixture_density_values(self.measure, x, self.rtol)

    def moments(self, max_order: int) -> list[Number]:
        # E X^{2k} = (2k - 1)!! E ρ^{2k}; a heavy-tailed P has no moments past its order
        return [
            gaussian_moment(r) * mixing_moment(self.measure, r, self.rtol) if r % 2 == 0 else 0
            for r in range(1, max_order + 1)
        ]

    def cf(self, t: np.ndarray) -> np.ndarray:
        return mixture_cf_values(self.measure, t, self.rtol).astype(complex)
