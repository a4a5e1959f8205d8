import asyncio
from collections.abc import Callable, Sequence
from math import floor, log
from typing import Awaitable, TypeVar

from src.core.exceptions import CumulantAssumptionViolated, NumericalDiagnostic
from src.core.logger import Logger
from src.core.settings import Settings
from src.distributions.base_distribution import BaseDistribution
from src.services.coefficient_service import CoefficientService
from src.services.density_service import DensityService
from src.services.entropy_service import EntropyService
from src.services.mixture_service import MixtureService
from src.services.models.density_models import (
    DistributionSpec,
    GridDensity,
    GridParams,
    MixingMeasure,
)
from src.services.models.entropy_models import EntropyReport, TailSplit
from src.services.models.experiment_models import (
    Condition81Row,
    ConvergenceRow,
    Corollary12Row,
    ExperimentKind,
    ExperimentTable,
    LowerBoundRow,
)

R = TypeVar("R")

NAN = float("nan")
LOW_CUMULANT_TOLERANCE = 1e-12


def default_n_list() -> list[int]:
    return [2**k for k in range(4, 11)]


class ExperimentService:
    def __init__(
        self,
        logger: Logger,
        settings: Settings,
        coefficient_service: CoefficientService,
        density_service: DensityService,
        mixture_service: MixtureService,
        entropy_service: EntropyService,
    ) -> None:
        self.logger = logger
        self.settings = settings

        self.coefficient_service = coefficient_service
        self.density_service = density_service
        self.mixture_service = mixture_service
        self.entropy_service = entropy_service

    async def _run_rows(self, n_list: Sequence[int], compute_row: Callable[[int], R]) -> list[R]:
        """Rows run in worker threads, at most CONCURRENT_ROWS at a time, returned in input order"""
        semaphore = asyncio.Semaphore(self.settings.CONCURRENT_ROWS)

        async def row_with_semaphore(n: int) -> R:
            async with semaphore:
                return await asyncio.to_thread(compute_row, n)

        tasks: list[Awaitable[R]] = [row_with_semaphore(n) for n in n_list]
        return list(await asyncio.gather(*tasks))

    @staticmethod
    def _validate_n_list(n_list: Sequence[int] | None) -> list[int]:
        n_list = list(n_list) if n_list else default_n_list()
        if any(n < 1 for n in n_list):
            raise ValueError(f"All n must be >= 1, got {n_list}")
        if n_list != sorted(n_list):
            raise ValueError(f"n list must be ascending, got {n_list}")
        return n_list

    def _split(self, s: float, n: int) -> TailSplit:
        return self.entropy_service.tail_split(s if n >= 3 else 2.0, max(n, 3))

    def _entropy(
        self, compute_density: Callable[[GridParams], GridDensity], n: int, split: TailSplit
    ) -> tuple[EntropyReport, GridDensity, float | None]:
        """Entropy of the density on the default grid, with a refined-grid drift check"""
        grid = self.density_service.default_grid(n)
        density = compute_density(grid)
        report = self.entropy_service.relative_entropy_std(density, split)

        drift = None
        if self.settings.GRID_CONVERGENCE_CHECK:
            refined = self.entropy_service.relative_entropy_std(compute_density(grid.refined()), split)
            drift = abs(refined.D_total - report.D_total)
            if drift > self.settings.GRID_CONVERGENCE_TOLERANCE:
                self.logger.warning(
                    f"n={n}: entropy changes by {drift:.3e} when the grid is refined"
                )
        return report, density, drift

    # Rates
    async def converge_experiment(
        self,
        spec: DistributionSpec | BaseDistribution,
        s: float,
        n_list: Sequence[int] | None = None,
    ) -> ExperimentTable[ConvergenceRow]:
        n_list = self._validate_n_list(n_list)
        distribution = self.density_service.distribution_from_spec(spec)

        order = floor((s - 2) / 2)
        cumulants = distribution.cumulants(2 * order + 1) if order >= 1 else None
        coefficients = (
            [self.coefficient_service.cj_exact(cumulants, j) for j in range(1, order + 1)]
            if cumulants is not None
            else []
        )
        self.logger.info(
            f"Convergence run for {distribution.description}, s={s}, {len(n_list)} rows"
        )

        def compute_row(n: int) -> ConvergenceRow:
            if cumulants is not None and n >= 2:
                prediction = self.coefficient_service.expansion_prediction(cumulants, s, n)
                predicted, delta_n = prediction.value, prediction.delta_n
            else:
                predicted = 0.0
                delta_n = self.coefficient_service.delta_n(s, n) if n >= 2 else NAN

            try:
                report, density, drift = self._entropy(
                    lambda grid: self.density_service.convolve_power(distribution, n, grid),
                    n,
                    self._split(s, n),
                )
            except NumericalDiagnostic as e:
                self.logger.warning(f"n={n}: row marked invalid, {e}")
                return ConvergenceRow(
                    n=n, D_n=NAN, prediction=predicted, residual=NAN, scaled_residual=NAN,
                    delta_n=delta_n, T_used=NAN, tail_second_moment=NAN, clamped_mass=NAN,
                    valid=False, error=str(e),
                )

            residual = report.D_total - predicted
            scale = (n * log(n)) ** ((s - 2) / 2) if n >= 2 else 1.0
            self.logger.info(f"n={n}: D_n={report.D_total:.6e}, prediction={predicted:.6e}")
            return ConvergenceRow(
                n=n,
                D_n=report.D_total,
                prediction=predicted,
                residual=residual,
                scaled_residual=residual * scale,
                delta_n=delta_n,
                T_used=report.T_used,
                tail_second_moment=report.tail_second_moment,
                clamped_mass=density.clamped_mass,
                grid_drift=drift,
            )

        rows = await self._run_rows(n_list, compute_row)
        return ExperimentTable(
            kind=ExperimentKind.CONVERGE,
            rows=rows,
            metadata={
                "family": distribution.family.value,
                "s": s,
                "coefficients": [str(c) for c in coefficients],
            },
        )

    async def corollary12_experiment(
        self,
        spec: DistributionSpec | BaseDistribution,
        k: int,
        s: float | None = None,
        n_list: Sequence[int] | None = None,
    ) -> ExperimentTable[Corollary12Row]:
        """n^{k-2} D_n against γ_k²/(2 k!) for laws whose cumulants below order k vanish"""
        n_list = self._validate_n_list(n_list)
        s = float(k) if s is None else s
        distribution = self.density_service.distribution_from_spec(spec)

        cumulants = distribution.cumulants(k)
        for r in range(3, k):
            if abs(cumulants[r]) > LOW_CUMULANT_TOLERANCE:
                raise CumulantAssumptionViolated(
                    f"γ_{r} = {cumulants[r]} does not vanish for {distribution.description}"
                )

        limit = float(self.coefficient_service.special_case_coefficient(k)(cumulants[k]))
        self.logger.info(f"Corollary run for {distribution.description}, k={k}, limit={limit:.6e}")

        def compute_row(n: int) -> Corollary12Row:
            try:
                report, _, _ = self._entropy(
                    lambda grid: self.density_service.convolve_power(distribution, n, grid),
                    n,
                    self._split(s, n),
                )
            except NumericalDiagnostic as e:
                self.logger.warning(f"n={n}: row marked invalid, {e}")
                return Corollary12Row(
                    n=n, D_n=NAN, scaled_D_n=NAN, limit=limit, ratio=NAN, valid=False, error=str(e)
                )

            scaled = n ** (k - 2) * report.D_total
            return Corollary12Row(
                n=n,
                D_n=report.D_total,
                scaled_D_n=scaled,
                limit=limit,
                ratio=scaled / limit if limit else NAN,
            )

        rows = await self._run_rows(n_list, compute_row)
        return ExperimentTable(
            kind=ExperimentKind.COROLLARY12,
            rows=rows,
            metadata={"family": distribution.family.value, "k": k, "gamma_k": str(cumulants[k])},
        )

    # Lower bound
    async def lowerbound_experiment(
        self,
        s: float,
        eta: float,
        n_list: Sequence[int] | None = None,
        measure: MixingMeasure | None = None,
    ) -> ExperimentTable[LowerBoundRow]:
        n_list = self._validate_n_list(n_list)
        P = measure or self.mixture_service.theorem13_measure(s, eta)
        self.logger.info(f"Lower-bound run for {P.description}, {len(n_list)} rows")

        def compute_row(n: int) -> LowerBoundRow:
            bound = self.mixture_service.lower_bound(P, n) if n >= 2 else NAN
            try:
                report, _, _ = self._entropy(
                    lambda grid: self.mixture_service.mixture_pn(P, n, grid),
                    n,
                    self._split(s, n),
                )
            except NumericalDiagnostic as e:
                self.logger.warning(f"n={n}: row marked invalid, {e}")
                return LowerBoundRow(
                    n=n, D_n=NAN, bound=bound, ratio=NAN, theorem13_scale=NAN,
                    valid=False, error=str(e),
                )

            D_n = report.D_total
            return LowerBoundRow(
                n=n,
                D_n=D_n,
                bound=bound,
                ratio=D_n / bound if bound > 0 else NAN,
                theorem13_scale=D_n * (n * log(n)) ** ((s - 2) / 2) * log(n) ** eta if n >= 2 else NAN,
            )

        rows = await self._run_rows(n_list, compute_row)
        fitted = self.fit_lower_bound_constant(rows)

        return ExperimentTable(
            kind=ExperimentKind.LOWERBOUND,
            rows=rows,
            metadata={"s": s, "eta": eta, "fitted_constant": fitted, **P.metadata},
        )

    def fit_lower_bound_constant(self, rows: Sequence[LowerBoundRow]) -> float | None:
        """Fit c at the smallest valid n and flag the rows where D_n < c * bound / 2"""
        fitted = next((row.ratio for row in rows if row.valid and row.ratio == row.ratio), None)
        for row in rows:
            row.fitted_constant = fitted
            if fitted is None or not row.valid or row.bound != row.bound:
                continue
            row.above_half_bound = bool(row.D_n >= 0.5 * fitted * row.bound)
            if not row.above_half_bound:
                self.logger.warning(
                    f"n={row.n}: D_n={row.D_n:.3e} is below half the fitted bound {fitted * row.bound:.3e}"
                )
        return fitted

    def condition81_check(
        self,
        P: MixingMeasure,
        s: float,
        gamma: float,
        n_list: Sequence[int] | None = None,
    ) -> ExperimentTable[Condition81Row]:
        """n^{s-1/2} ∫_{n^{1/2+γ}}^∞ σ^{-1} dP(σ) along n_list, its minimum standing in for the liminf"""
        n_list = self._validate_n_list(n_list)
        if gamma <= 0:
            raise ValueError(f"γ must be positive, got {gamma}")
        admissible = (s - 2) / (2 * s)
        if gamma > admissible:
            self.logger.warning(f"γ={gamma} exceeds (s-2)/(2s)={admissible:.6f}, expect decay")

        rows = []
        for n in n_list:
            lower_limit = n ** (0.5 + gamma)
            value = n ** (s - 0.5) * self.mixture_service.inverse_tail(P, lower_limit)
            rows.append(Condition81Row(n=n, lower_limit=lower_limit, value=value))

        minimum = min((row.value for row in rows), default=NAN)
        self.logger.info(f"Condition check s={s}, γ={gamma}: minimum {minimum:.6e}")
        return ExperimentTable(
            kind=ExperimentKind.CONDITION81,
            rows=rows,
            metadata={"s": s, "gamma": gamma, "minimum": minimum},
        )
