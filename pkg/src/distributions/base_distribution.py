from abc import ABC, abstractmethod

import numpy as np

from src.algebra.cumulants import CumulantSet, moments_to_cumulants
from src.algebra.scalars import Number
from src.services.models.density_models import DistributionFamily


class BaseDistribution(ABC):
    """Standardized (mean 0, variance 1) law of one summand X_1"""

    @property
    @abstractmethod
    def family(self) -> DistributionFamily: ...

    @property
    @abstractmethod
    def description(self) -> str: ...

    @abstractmethod
    def pdf(self, x: np.ndarray) -> np.ndarray: ...

    @abstractmethod
    def moments(self, max_order: int) -> list[Number]:
        """Raw moments μ_1..μ_max_order, exact where the family allows it"""

    def cf(self, t: np.ndarray) -> np.ndarray | None:
        """Analytic characteristic function, None when only the density is known"""
        return None

    @property
    def is_gaussian(self) -> bool:
        """Standard normal, so every normalized sum has the same law"""
        return False

    def cumulants(self, max_order: int) -> CumulantSet:
        return moments_to_cumulants(self.moments(max_order))

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.description})"
