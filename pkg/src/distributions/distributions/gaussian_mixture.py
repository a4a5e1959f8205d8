from collections.abc import Sequence
from fractions import Fraction
from math import comb

import numpy as np

from src.algebra.hermite import gaussian_moment
from src.algebra.scalars import Number, is_exact
from src.distributions.base_distribution import BaseDistribution
from src.services.models.density_models import DistributionFamily
from src.utils.normal_utils import normal_pdf


class GaussianMixtureDistribution(BaseDistribution):
    """Σ w_i N(μ_i, v_i), shifted and scaled to mean 0 and variance 1.

    Parameters stay exact when they are rationals and already standardized.
    """

    def __init__(
        self,
        weights: Sequence[Number],
        means: Sequence[Number],
        variances: Sequence[Number],
    ) -> None:
        if not len(weights) == len(means) == len(variances) or not weights:
            raise ValueError("Mixture weights, means and variances must have one equal, non-zero length")
        if any(w < 0 for w in weights) or any(v <= 0 for v in variances):
            raise ValueError("Mixture weights must be non-negative and variances positive")

        total = sum(weights)
        weights = [w / total for w in weights]

        mean = sum(w * m for w, m in zip(weights, means))
        variance = sum(w * (v + (m - mean) ** 2) for w, m, v in zip(weights, means, variances))

        if mean == 0 and variance == 1:
            self.weights, self.means, self.variances = list(weights), list(means), list(variances)
        else:
            scale = float(variance) ** 0.5
            self.weights = [float(w) for w in weights]
            self.means = [float(m - mean) / scale for m in means]
            self.variances = [float(v) / scale**2 for v in variances]

    @classmethod
    def zero_fourth_cumulant(cls, shift: Number = Fraction(6, 5)) -> "GaussianMixtureDistribution":
        """2/3 N(0, s²) + 1/6 N(±a, s²) with s² = 1 - a²/3, so that γ_3 = γ_4 = 0"""
        variance = 1 - Fraction(shift) ** 2 / 3 if is_exact(shift) else 1 - shift**2 / 3
        return cls(
            weights=[Fraction(2, 3), Fraction(1, 6), Fraction(1, 6)],
            means=[0, shift, -shift],
            variances=[variance] * 3,
        )

    @property
    def family(self) -> DistributionFamily:
        return DistributionFamily.GAUSSIAN_MIXTURE

    @property
    def description(self) -> str:
        components = ", ".join(
            f"{float(w):.6g}·N({float(m):.6g}, {float(v):.6g})"
            for w, m, v in zip(self.weights, self.means, self.variances)
        )
        return f"gaussian mixture [{components}]"

    def pdf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return sum(
            float(w) * normal_pdf(x - float(m), float(v) ** 0.5)
            for w, m, v in zip(self.weights, self.means, self.variances)
        )

    def moments(self, max_order: int) -> list[Number]:
        # E (μ + √v Z)^r = Σ_l C(r, l) μ^{r-l} v^{l/2} E Z^l, only even l contribute
        return [
            sum(
                w
                * sum(
                    comb(r, l) * m ** (r - l) * v ** (l // 2) * gaussian_moment(l)
                    for l in range(0, r + 1, 2)
                )
                for w, m, v in zip(self.weights, self.means, self.variances)
            )
            for r in range(1, max_order + 1)
        ]

    def cf(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return sum(
            float(w) * np.exp(1j * float(m) * t - 0.5 * float(v) * t**2)
            for w, m, v in zip(self.weights, self.means, self.variances)
        )
