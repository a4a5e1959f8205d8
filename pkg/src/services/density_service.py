from fractions import Fraction
from math import comb, e, pi
from pathlib import Path
from typing import Any

import numpy as np
from scipy.stats import binom

from src.algebra.scalars import parse_number
from src.core.exceptions import (
    DensityBounded,
    DimensionMismatch,
    GridTooCoarse,
    OrderOutOfRange,
    ThresholdTooLow,
    UnsupportedFamily,
)
from src.core.logger import Logger
from src.core.settings import Settings
from src.distributions.base_distribution import BaseDistribution
from src.distributions.distributions.centered_exponential import (
    CenteredExponentialDistribution,
)
from src.distributions.distributions.gaussian import GaussianDistribution
from src.distributions.distributions.gaussian_mixture import GaussianMixtureDistribution
from src.distributions.distributions.laplace import LaplaceDistribution
from src.distributions.distributions.normal_scale_mixture import (
    NormalScaleMixtureDistribution,
)
from src.distributions.distributions.table import TableDistribution
from src.distributions.distributions.uniform import UniformDistribution
from src.services.models.density_models import (
    DistributionFamily,
    DistributionSpec,
    GridDensity,
    GridParams,
    MixingMeasure,
    TruncationDecomposition,
)
from src.storage.repositories.grid_density_repository import GridDensityRepository
from src.utils.fourier_utils import cf_to_density_values, frequency_grid, grid_cf_at
from src.utils.grid_utils import default_grid


class DensityService:
    def __init__(
        self,
        logger: Logger,
        settings: Settings,
        grid_density_repository: GridDensityRepository,
    ) -> None:
        self.logger = logger
        self.settings = settings

        self.grid_density_repository = grid_density_repository

    def distribution_from_spec(self, spec: DistributionSpec | BaseDistribution) -> BaseDistribution:
        if isinstance(spec, BaseDistribution):
            return spec

        try:
            family = DistributionFamily(spec.family)
        except ValueError:
            raise UnsupportedFamily(
                f"Unknown distribution family {spec.family!r}, expected one of "
                f"{[f.value for f in DistributionFamily]}"
            )

        match family:
            case DistributionFamily.UNIFORM:
                return UniformDistribution()
            case DistributionFamily.CENTERED_EXPONENTIAL:
                return CenteredExponentialDistribution()
            case DistributionFamily.LAPLACE:
                return LaplaceDistribution()
            case DistributionFamily.GAUSSIAN:
                return GaussianDistribution()
            case DistributionFamily.GAUSSIAN_MIXTURE:
                if spec.weights is None or spec.means is None or spec.variances is None:
                    return GaussianMixtureDistribution.zero_fourth_cumulant()
                return GaussianMixtureDistribution(
                    weights=[parse_number(w) for w in spec.weights],
                    means=[parse_number(m) for m in spec.means],
                    variances=[parse_number(v) for v in spec.variances],
                )
            case DistributionFamily.NORMAL_SCALE_MIXTURE:
                if not spec.atoms:
                    raise UnsupportedFamily("normal_scale_mixture needs atoms [(σ, w), ...]")
                return NormalScaleMixtureDistribution(
                    MixingMeasure(atoms=tuple(spec.atoms), description="atoms from spec"),
                    rtol=self.settings.MIXTURE_RTOL,
                )
            case DistributionFamily.TABLE:
                if spec.table_path is None:
                    raise UnsupportedFamily("table family needs a table_path")
                return TableDistribution(self.grid_density_repository.load(Path(spec.table_path)))

    def default_grid(self, n: int) -> GridParams:
        return default_grid(n, self.settings)

    def finalize(self, raw: np.ndarray, grid: GridParams, label: str) -> GridDensity:
        """Clamp negative ringing to 0 and renormalize, refusing large corrections"""
        h = grid.step
        negative = raw < 0
        clamped_mass = float(h * -np.sum(raw[negative]))
        values = np.where(negative, 0.0, raw)

        mass = h * np.sum(values)
        correction = abs(1.0 - mass)
        if correction > self.settings.MASS_CORRECTION_TOLERANCE:
            raise GridTooCoarse(
                f"{label}: mass correction {correction:.3e} after clamping exceeds "
                f"{self.settings.MASS_CORRECTION_TOLERANCE:.1e} on grid "
                f"[{grid.lo}, {grid.hi}] with {grid.n_points} points"
            )
        if clamped_mass > 0:
            self.logger.debug(f"{label}: clamped mass {clamped_mass:.3e}")

        return self.check_normalized(
            GridDensity(lo=grid.lo, hi=grid.hi, values=values / mass, clamped_mass=clamped_mass),
            label,
        )

    def check_normalized(self, density: GridDensity, label: str) -> GridDensity:
        """A zero-mass grid leaves NaN values, which fail the check as well"""
        if not density.normalization_defect <= self.settings.NORMALIZATION_TOLERANCE:
            raise GridTooCoarse(
                f"{label}: normalization defect {density.normalization_defect:.3e} exceeds "
                f"{self.settings.NORMALIZATION_TOLERANCE:.1e}"
            )
        return density

    def density_from_spec(
        self, spec: DistributionSpec | BaseDistribution, grid: GridParams | None = None
    ) -> GridDensity:
        distribution = self.distribution_from_spec(spec)
        grid = grid or self.default_grid(1)

        values = np.asarray(distribution.pdf(grid.x), dtype=float)
        density = self.check_normalized(
            GridDensity(lo=grid.lo, hi=grid.hi, values=values).normalized(), distribution.description
        )
        self.logger.debug(
            f"{distribution.description} on grid: mean {density.mean:.3e}, "
            f"variance {density.variance:.12f}"
        )
        return density

    def convolve_power(
        self,
        source: DistributionSpec | BaseDistribution | GridDensity,
        n: int,
        grid: GridParams | None = None,
    ) -> GridDensity:
        """Density of Z_n = (X_1 + ... + X_n)/√n"""
        if n < 1:
            raise ValueError(f"Number of summands must be >= 1, got {n}")
        grid = grid or self.default_grid(n)

        if isinstance(source, GridDensity):
            if n == 1:
                values = np.interp(grid.x, source.x, source.values, left=0.0, right=0.0)
                return self.check_normalized(
                    GridDensity(lo=grid.lo, hi=grid.hi, values=values).normalized(), "grid density, n=1"
                )
            tau = frequency_grid(grid) / np.sqrt(n)
            cf = grid_cf_at(source.values, source.grid, tau) ** n
            return self.finalize(cf_to_density_values(cf, grid), grid, f"grid density, n={n}")

        distribution = self.distribution_from_spec(source)
        if n == 1 or distribution.is_gaussian:
            return self.density_from_spec(distribution, grid)

        tau = frequency_grid(grid) / np.sqrt(n)
        single = distribution.cf(tau)
        if single is None:
            base = self.density_from_spec(distribution, self.default_grid(1))
            single = grid_cf_at(base.values, base.grid, tau)

        return self.finalize(
            cf_to_density_values(single**n, grid),
            grid,
            f"{distribution.description}, n={n}",
        )

    # Truncation construction
    def truncate_decompose(self, p: GridDensity, M: float, m0: int, n0: int = 1) -> TruncationDecomposition:
        if m0 < 0:
            raise ValueError(f"m0 must be non-negative, got {m0}")
        p = p.normalized()

        above = p.values > M
        b = float(p.step * np.sum(p.values[above]))
        if b == 0:
            raise DensityBounded(f"Density never exceeds M={M}, truncation is not needed")
        if b >= 0.5:
            raise ThresholdTooLow(f"Mass above M={M} is b={b:.6f}, need b < 1/2")

        rho1 = GridDensity(lo=p.lo, hi=p.hi, values=np.where(above, 0.0, p.values) / (1.0 - b))
        rho2 = GridDensity(lo=p.lo, hi=p.hi, values=np.where(above, p.values, 0.0) / b)
        self.logger.debug(f"Truncation at M={M}: b={b:.6f}, m0={m0}, n0={n0}")
        return TruncationDecomposition(M=M, b=b, rho1=rho1, rho2=rho2, m0=m0, n0=n0)

    def default_m0(self, s: float) -> int:
        if self.settings.TRUNCATION_M0 is not None:
            return self.settings.TRUNCATION_M0
        return int(np.floor(s)) + 1

    @staticmethod
    def epsilon_n(b: Any, m0: int, n: int) -> Any:
        """Mass Σ_{k<=m0} C(n,k)(1-b)^k b^{n-k} of the terms dropped from p̃_n"""
        if n <= m0:
            raise ValueError(f"Need n > m0, got n={n}, m0={m0}")
        if isinstance(b, str):
            b = Fraction(b)
        return sum(comb(n, k) * (1 - b) ** k * b ** (n - k) for k in range(m0 + 1))

    def tilde_density(
        self,
        dec: TruncationDecomposition,
        n: int,
        grid: GridParams | None = None,
        remainder: BaseDistribution | None = None,
    ) -> GridDensity:
        """p̃_n keeping only the binomial terms with more than m0 bounded factors.

        With dec.n0 > 1 the decomposition describes Z_{n0}; Z_n is then built from n // n0
        blocks and n % n0 single summands drawn from `remainder`.
        """
        blocks, rest = divmod(n, dec.n0)
        if blocks < dec.m0 + 1:
            raise OrderOutOfRange(
                f"p̃_n needs at least m0 + 1 = {dec.m0 + 1} blocks, got {blocks} for n={n}"
            )
        if rest and remainder is None:
            raise ValueError(f"n={n} is not a multiple of n0={dec.n0}, a remainder law is needed")

        grid = grid or self.default_grid(n)
        t = frequency_grid(grid)
        tau = t * np.sqrt(dec.n0 / n)
        u1 = grid_cf_at(dec.rho1.values, dec.rho1.grid, tau)
        u2 = grid_cf_at(dec.rho2.values, dec.rho2.grid, tau)

        epsilon = float(self.epsilon_n(dec.b, dec.m0, blocks))
        cf = np.zeros_like(u1)
        for k in range(dec.m0 + 1, blocks + 1):
            cf += binom.pmf(k, blocks, 1.0 - dec.b) * u1**k * u2 ** (blocks - k)
        cf /= 1.0 - epsilon

        if rest:
            single = remainder.cf(t / np.sqrt(n))
            if single is None:
                base = self.density_from_spec(remainder, self.default_grid(1))
                single = grid_cf_at(base.values, base.grid, t / np.sqrt(n))
            cf *= single**rest

        self.logger.debug(f"p̃_{n}: ε_n={epsilon:.3e} over {blocks} blocks of size {dec.n0}")
        return self.finalize(cf_to_density_values(cf, grid), grid, f"p̃_n, n={n}")

    @staticmethod
    def remark24_M_bound(D1: float, b: float, sigma2: float, d: int = 1) -> float:
        """(2πe σ²)^{-d/2} e^{(D1 + 1)/b}"""
        if D1 < 0 or not 0 < b <= 0.5 or sigma2 <= 0:
            raise ValueError(f"Need D1 >= 0, 0 < b <= 1/2, sigma2 > 0, got {D1}, {b}, {sigma2}")
        return float((2 * pi * e * sigma2) ** (-d / 2) * np.exp((D1 + 1) / b))

    @staticmethod
    def l1_distance(p: GridDensity, q: GridDensity) -> float:
        if p.grid != q.grid:
            raise DimensionMismatch(f"Densities live on different grids: {p.grid} and {q.grid}")
        return float(p.step * np.sum(np.abs(p.values - q.values)))
