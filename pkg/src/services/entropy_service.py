from math import log

import numpy as np
from scipy.integrate import trapezoid

from src.core.exceptions import NegativeEntropyBeyondFloor
from src.core.logger import Logger
from src.core.settings import Settings
from src.services.models.density_models import GridDensity
from src.services.models.entropy_models import EntropyReport, MatchedMomentCheck, TailSplit
from src.utils.normal_utils import LOG_SQRT_2PI, log_std_normal_pdf


class EntropyService:
    def __init__(self, logger: Logger, settings: Settings) -> None:
        self.logger = logger
        self.settings = settings

    def rho_n(self, n: int) -> float:
        if self.settings.RHO_N_MODE == "loglog":
            return log(log(n))
        return self.settings.RHO_N

    def tail_split(self, s: float, n: int) -> TailSplit:
        return TailSplit(s=s, n=n, rho_n=self.rho_n(n))

    @staticmethod
    def tail_split_radius(s: float, n: int, rho_n: float) -> float:
        """T_n = √((s-2) log n + s log log n + ρ_n), √ρ_n when s = 2"""
        if s < 2:
            raise ValueError(f"Tail radius needs s >= 2, got {s}")
        if s > 2 and n < 3:
            raise ValueError(f"Tail radius needs n >= 3, got {n}")
        return TailSplit(s=s, n=n, rho_n=rho_n).T

    def _log_density(self, p: GridDensity) -> tuple[np.ndarray, np.ndarray]:
        """p and log p with 0 log 0 = 0 below the cutoff"""
        positive = p.values >= self.settings.ENTROPY_ZERO_CUTOFF
        log_p = np.zeros_like(p.values)
        log_p[positive] = np.log(p.values[positive])
        return np.where(positive, p.values, 0.0), log_p

    def _check_floor(self, value: float, label: str) -> None:
        if value < self.settings.ENTROPY_FLOOR:
            self.logger.error(f"{label} = {value:.3e} is below the floor {self.settings.ENTROPY_FLOOR}")
            raise NegativeEntropyBeyondFloor(
                f"{label} = {value:.3e} is below {self.settings.ENTROPY_FLOOR}, grid is too coarse"
            )

    def relative_entropy_std(self, p: GridDensity, split: TailSplit | None = None) -> EntropyReport:
        """∫ p log(p/φ) by the trapezoid rule"""
        x = p.x
        values, log_p = self._log_density(p)
        integrand = values * (log_p - log_std_normal_pdf(x))

        T = split.T if split is not None else self.tail_split(2.0, 3).T
        core = np.abs(x) <= T

        D_total = float(trapezoid(integrand, dx=p.step))
        D_core = float(trapezoid(np.where(core, integrand, 0.0), dx=p.step))
        self._check_floor(D_total, "D")

        return EntropyReport(
            D_total=D_total,
            D_core=D_core,
            tail_mass=float(trapezoid(np.where(core, 0.0, values), dx=p.step)),
            tail_second_moment=self.tail_second_moment(p, T),
            T_used=T,
        )

    def matched_moment_identity(self, p: GridDensity) -> MatchedMomentCheck:
        """D(R) against N(μ, σ²) and D(R) + log(1/σ) + (E R² - 1)/2 as a check of D(R || Z)"""
        x = p.x
        values, log_p = self._log_density(p)

        mass = trapezoid(values, dx=p.step)
        mean = trapezoid(x * values, dx=p.step) / mass
        second = trapezoid(x**2 * values, dx=p.step) / mass
        variance = second - mean**2
        if variance <= 0:
            raise ValueError(f"Grid variance must be positive, got {variance}")

        sigma = np.sqrt(variance)
        log_matched = -0.5 * ((x - mean) / sigma) ** 2 - np.log(sigma) - LOG_SQRT_2PI
        D_matched = float(trapezoid(values * (log_p - log_matched), dx=p.step))
        self._check_floor(D_matched, "D(R)")

        reconstruction = D_matched - float(np.log(sigma)) + 0.5 * (float(second) - 1.0)
        return MatchedMomentCheck(
            D_matched=D_matched,
            reconstruction=reconstruction,
            mean=float(mean),
            variance=float(variance),
        )

    @staticmethod
    def tail_second_moment(p: GridDensity, T: float) -> float:
        x = p.x
        return float(trapezoid(np.where(np.abs(x) > T, x**2 * p.values, 0.0), dx=p.step))
