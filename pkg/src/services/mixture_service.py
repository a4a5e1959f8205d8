from math import log, sqrt

import numpy as np
from scipy.integrate import quad

from src.core.exceptions import CalibrationFailure, QuadratureFailure
from src.core.logger import Logger
from src.core.settings import Settings
from src.distributions.mixing import (
    check_calibration,
    mixing_expectation,
    mixing_inverse_tail,
    mixing_moment,
    mixing_tail_probability,
    mixture_cf_values,
    mixture_density_values,
    mixture_psi_values,
    sample_mixing,
)
from src.services.density_service import DensityService
from src.services.models.density_models import GridDensity, GridParams, MixingMeasure
from src.utils.fourier_utils import cf_to_density_values, frequency_grid
from src.utils.normal_utils import normal_pdf, std_normal_pdf

MONTE_CARLO_CHUNK = 100_000


class MixtureService:
    def __init__(
        self,
        logger: Logger,
        settings: Settings,
        density_service: DensityService,
    ) -> None:
        self.logger = logger
        self.settings = settings

        self.density_service = density_service

    @property
    def rtol(self) -> float:
        return self.settings.MIXTURE_RTOL

    def mixture_cf(self, P: MixingMeasure, t: float | np.ndarray) -> float | np.ndarray:
        """v(t) = E e^{-ρ²t²/2}"""
        values = mixture_cf_values(P, t, self.rtol)
        return float(values) if values.ndim == 0 else values

    def mixture_psi(self, P: MixingMeasure, t: float | np.ndarray) -> float | np.ndarray:
        """ψ(t) = e^{t²/2} v(t) - 1"""
        values = mixture_psi_values(P, t, self.rtol)
        return float(values) if values.ndim == 0 else values

    def mixture_moment(self, P: MixingMeasure, s: float) -> float:
        """M_s = E ρ^s"""
        return mixing_moment(P, s, self.rtol)

    def tail_probability(self, P: MixingMeasure, u: float) -> float:
        return mixing_tail_probability(P, u, self.rtol)

    def inverse_tail(self, P: MixingMeasure, u: float) -> float:
        return mixing_inverse_tail(P, u, self.rtol)

    def sample(self, P: MixingMeasure, size: int, rng: np.random.Generator | None = None) -> np.ndarray:
        rng = rng or np.random.default_rng(self.settings.SEED)
        return sample_mixing(P, rng, size)

    def mixture_pn(self, P: MixingMeasure, n: int, grid: GridParams | None = None) -> GridDensity:
        """Density of Z_n for the scale mixture, v_n(t) = v(t/√n)^n inverted on the grid"""
        if n < 1:
            raise ValueError(f"Number of summands must be >= 1, got {n}")
        grid = grid or self.density_service.default_grid(n)

        if n == 1:
            values = mixture_density_values(P, grid.x, self.rtol)
            return GridDensity(lo=grid.lo, hi=grid.hi, values=values).normalized()

        t = frequency_grid(grid)
        # v is even, evaluate once per |t|
        magnitudes, inverse = np.unique(np.abs(t), return_inverse=True)
        v = mixture_cf_values(P, magnitudes / np.sqrt(n), self.rtol)[inverse]
        return self.density_service.finalize(
            cf_to_density_values(v**n, grid), grid, f"scale mixture {P.description}, n={n}"
        )

    def monte_carlo_density(
        self,
        P: MixingMeasure,
        n: int,
        x: float | np.ndarray,
        draws: int | None = None,
        rng: np.random.Generator | None = None,
    ) -> tuple[np.ndarray, np.ndarray]:
        """Mean and standard error of φ_σ̄(x), σ̄² = (ρ_1² + ... + ρ_n²)/n, over seeded draws"""
        draws = draws or self.settings.MONTE_CARLO_DRAWS
        rng = rng or np.random.default_rng(self.settings.SEED)
        x = np.atleast_1d(np.asarray(x, dtype=float))

        total = np.zeros_like(x)
        total_sq = np.zeros_like(x)
        remaining = draws
        while remaining > 0:
            size = min(remaining, MONTE_CARLO_CHUNK)
            rho = sample_mixing(P, rng, size * n).reshape(size, n)
            sigma_bar = np.sqrt(np.mean(rho**2, axis=1))
            values = normal_pdf(x[None, :], sigma_bar[:, None])
            total += values.sum(axis=0)
            total_sq += (values**2).sum(axis=0)
            remaining -= size

        mean = total / draws
        variance = np.maximum(total_sq / draws - mean**2, 0.0)
        return mean, np.sqrt(variance / draws)

    def prop71_approx(self, P: MixingMeasure, n: int, x: float | np.ndarray) -> float | np.ndarray:
        """φ(x) + n ∫ (φ_{σ_n}(x) - φ(x)) dP(σ), σ_n = √(1 + (σ² - 1)/n)"""
        if n < 1:
            raise ValueError(f"Number of summands must be >= 1, got {n}")
        x = np.asarray(x, dtype=float)
        phi = std_normal_pdf(x)
        correction = mixing_expectation(
            P,
            lambda sigma: normal_pdf(x, np.sqrt(1.0 + (sigma**2 - 1.0) / n)) - phi,
            self.rtol,
        )
        value = phi + n * np.asarray(correction)
        return float(value) if value.ndim == 0 else value

    def lower_bound(self, P: MixingMeasure, n: int) -> float:
        """n log n P{ρ >= √(n log n)}"""
        scale = n * log(n)
        return scale * self.tail_probability(P, sqrt(scale))

    # Heavy-tailed measure for the lower bound
    def theorem13_measure(self, s: float, eta: float) -> MixingMeasure:
        """dP/dσ = c_η σ^{-s-1} (log σ)^{-η} beyond the split, constant on [σ_0, 1] below it.

        The tail carries LOWERBOUND_TAIL_WEIGHT of the mass and σ_0 is solved so that E ρ² = 1.
        P puts no mass on (1, split), the constant piece stops at 1.
        """
        if not 2 < s < 4 or eta <= 1:
            raise ValueError(f"Lower-bound measure needs 2 < s < 4 and η > 1, got s={s}, η={eta}")

        split = self.settings.LOWERBOUND_SIGMA_SPLIT
        weight = self.settings.LOWERBOUND_TAIL_WEIGHT

        # on u = log σ: σ^{r-s-1} (log σ)^{-η} dσ = e^{(r-s) u} u^{-η} du
        def tail_integral(r: float) -> float:
            value, error = quad(
                lambda u: np.exp((r - s) * u) * u ** (-eta),
                log(split),
                np.inf,
                epsabs=0.0,
                epsrel=self.rtol,
                limit=200,
            )
            if not np.isfinite(value) or error > 1e-6 * abs(value):
                raise QuadratureFailure(
                    f"Tail integral of order {r} did not converge: {value} ± {error}"
                )
            return value

        mass_integral, second_integral = tail_integral(0.0), tail_integral(2.0)
        c_eta = weight / mass_integral
        tail_second_moment = weight * second_integral / mass_integral

        # (1 - w)(1 + σ0 + σ0²)/3 + tail second moment = 1
        ratio = 3.0 * (1.0 - tail_second_moment) / (1.0 - weight)
        discriminant = 4.0 * ratio - 3.0
        sigma0 = (-1.0 + sqrt(discriminant)) / 2.0 if discriminant >= 0 else float("nan")
        if not 0 < sigma0 < 1:
            raise CalibrationFailure(
                f"No σ_0 in (0, 1) gives E ρ² = 1 for s={s}, η={eta}: tail second moment "
                f"{tail_second_moment:.6f} with tail weight {weight}"
            )

        height = (1.0 - weight) / (1.0 - sigma0)

        def density(sigma: float | np.ndarray) -> float | np.ndarray:
            sigma = np.asarray(sigma, dtype=float)
            safe = np.maximum(sigma, split)
            tail = c_eta * safe ** (-s - 1.0) * np.log(safe) ** (-eta)
            return np.where(
                (sigma >= sigma0) & (sigma <= 1.0),
                height,
                np.where(sigma >= split, tail, 0.0),
            )

        self.logger.info(
            f"Lower-bound measure s={s}, η={eta}: σ_0={sigma0:.6f}, c_η={c_eta:.6e}"
        )
        measure = MixingMeasure(
            density=density,
            pieces=((sigma0, 1.0), (split, np.inf)),
            description=f"heavy tail s={s}, η={eta}",
            metadata={
                "sigma0": sigma0,
                "c_eta": c_eta,
                "tail_weight": weight,
                "split": split,
                "extension": f"constant density on [{sigma0:.6f}, 1]",
            },
        )
        check_calibration(measure, self.rtol)
        return measure
