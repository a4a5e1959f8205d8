import math
from typing import Any

from pydantic import BaseModel

from src.services.models.entropy_models import EntropyReport, MatchedMomentCheck
from src.services.models.experiment_models import (
    Condition81Row,
    ConvergenceRow,
    Corollary12Row,
    ExperimentKind,
    LowerBoundRow,
)
from src.storage.repositories.models.report_documents import (
    Condition81RowDocument,
    ConvergenceRowDocument,
    Corollary12RowDocument,
    EntropyReportDocument,
    LowerBoundRowDocument,
)


def _optional(value: float | None) -> float | None:
    if value is None or math.isnan(value):
        return None
    return value


def domain_to_db_convergence_row(row: ConvergenceRow) -> ConvergenceRowDocument:
    return ConvergenceRowDocument(
        n=row.n,
        D_n=_optional(row.D_n),
        prediction=_optional(row.prediction),
        residual=_optional(row.residual),
        scaled_residual=_optional(row.scaled_residual),
        delta_n=_optional(row.delta_n),
        T_used=_optional(row.T_used),
        tail_second_moment=_optional(row.tail_second_moment),
        clamped_mass=_optional(row.clamped_mass),
        grid_drift=_optional(row.grid_drift),
        valid=row.valid,
        error=row.error,
    )


def domain_to_db_corollary12_row(row: Corollary12Row) -> Corollary12RowDocument:
    return Corollary12RowDocument(
        n=row.n,
        D_n=_optional(row.D_n),
        scaled_D_n=_optional(row.scaled_D_n),
        limit=row.limit,
        ratio=_optional(row.ratio),
        valid=row.valid,
        error=row.error,
    )


def domain_to_db_lowerbound_row(row: LowerBoundRow) -> LowerBoundRowDocument:
    return LowerBoundRowDocument(
        n=row.n,
        D_n=_optional(row.D_n),
        bound=_optional(row.bound),
        ratio=_optional(row.ratio),
        theorem13_scale=_optional(row.theorem13_scale),
        fitted_constant=_optional(row.fitted_constant),
        above_half_bound=row.above_half_bound,
        valid=row.valid,
        error=row.error,
    )


def domain_to_db_condition81_row(row: Condition81Row) -> Condition81RowDocument:
    return Condition81RowDocument(n=row.n, lower_limit=row.lower_limit, value=row.value)


def domain_to_db_entropy_report(
    report: EntropyReport, check: MatchedMomentCheck | None = None
) -> EntropyReportDocument:
    return EntropyReportDocument(
        D_total=report.D_total,
        D_core=report.D_core,
        tail_mass=report.tail_mass,
        tail_second_moment=report.tail_second_moment,
        T_used=report.T_used,
        D_matched=check.D_matched if check else None,
        reconstruction=check.reconstruction if check else None,
    )


def db_to_domain_convergence_row(document: ConvergenceRowDocument) -> ConvergenceRow:
    nan = float("nan")
    return ConvergenceRow(
        n=document.n,
        D_n=nan if document.D_n is None else document.D_n,
        prediction=nan if document.prediction is None else document.prediction,
        residual=nan if document.residual is None else document.residual,
        scaled_residual=nan if document.scaled_residual is None else document.scaled_residual,
        delta_n=nan if document.delta_n is None else document.delta_n,
        T_used=nan if document.T_used is None else document.T_used,
        tail_second_moment=nan if document.tail_second_moment is None else document.tail_second_moment,
        clamped_mass=nan if document.clamped_mass is None else document.clamped_mass,
        grid_drift=document.grid_drift,
        valid=document.valid,
        error=document.error,
    )


ROW_MAPPERS: dict[ExperimentKind, tuple[Any, type[BaseModel]]] = {
    ExperimentKind.CONVERGE: (domain_to_db_convergence_row, ConvergenceRowDocument),
    ExperimentKind.COROLLARY12: (domain_to_db_corollary12_row, Corollary12RowDocument),
    ExperimentKind.LOWERBOUND: (domain_to_db_lowerbound_row, LowerBoundRowDocument),
    ExperimentKind.CONDITION81: (domain_to_db_condition81_row, Condition81RowDocument),
}
