import numpy as np

from src.algebra.scalars import Number
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily, GridDensity


class TableDistribution(BaseDistribution):
    """Tabulated density, standardized on its own grid"""

    def __init__(self, density: GridDensity) -> None:
        density = density.normalized()
        mean, scale = density.mean, density.variance**0.5
        # X = (Y - mean) / scale has density scale · p(mean + scale x)
        self.density = GridDensity(
            lo=(density.lo - mean) / scale,
            hi=(density.hi - mean) / scale,
            values=density.values * scale,
        ).normalized()

    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.TABLE

    @property
    def description(self) -> str:
        return f"table on [{self.density.lo:.6g}, {self.density.hi:.6g}] with {self.density.n_points} points"

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return self.density(x)

    def moments(self, max_order: int) -> list[Number]:
        moments: list[Number] = [self.density.moment(r) for r in range(1, max_order + 1)]
        # standardized by construction, remove the residual rounding
        moments[0] = 0.0
        if max_order >= 2:
            moments[1] = 1.0
        return moments
