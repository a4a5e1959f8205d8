import argparse
from pathlib import Path

from dependency_injector.wiring import Provide, inject

from src.api.commands.common import (
    add_n_list_argument,
    add_report_arguments,
    load_distribution_spec,
)
from src.container import Container
from src.core.exceptions import UnsupportedFamily
from src.core.logger import Logger
from src.distributions.distributions.normal_scale_mixture import (
    NormalScaleMixtureDistribution,
)
from src.services.density_service import DensityService
from src.services.experiment_service import ExperimentService
from src.services.mixture_service import MixtureService
from src.services.models.density_models import MixingMeasure
from src.services.models.experiment_models import ExperimentTable
from src.services.report_service import ReportService


def register(subparsers: argparse._SubParsersAction) -> None:
    converge = subparsers.add_parser("converge", help="D_n against the expansion prediction")
    converge.add_argument("--spec", type=Path, required=True, help="JSON distribution spec")
    converge.add_argument("--s", type=float, required=True, help="Moment order s >= 2")
    add_n_list_argument(converge)
    add_report_arguments(converge)
    converge.set_defaults(handler=run_converge)

    corollary = subparsers.add_parser("corollary12", help="n^{k-2} D_n against γ_k²/(2 k!)")
    corollary.add_argument("--spec", type=Path, required=True, help="JSON distribution spec")
    corollary.add_argument("--k", type=int, required=True, help="First non-vanishing cumulant order")
    corollary.add_argument("--s", type=float, default=None, help="Moment order, defaults to k")
    add_n_list_argument(corollary)
    add_report_arguments(corollary)
    corollary.set_defaults(handler=run_corollary12)

    lowerbound = subparsers.add_parser("lowerbound", help="Heavy-tailed scale mixture lower bound")
    lowerbound.add_argument("--s", type=float, required=True, help="2 < s < 4")
    lowerbound.add_argument("--eta", type=float, required=True, help="η > 1")
    lowerbound.add_argument(
        "--spec", type=Path, default=None, help="normal_scale_mixture spec replacing the built measure"
    )
    add_n_list_argument(lowerbound)
    add_report_arguments(lowerbound)
    lowerbound.set_defaults(handler=run_lowerbound)

    check81 = subparsers.add_parser("check81", help="Tail condition sequence of a mixing measure")
    check81.add_argument("--s", type=float, required=True, help="Moment order s > 2")
    check81.add_argument("--gamma", type=float, required=True, help="γ > 0")
    check81.add_argument("--eta", type=float, default=1.5, help="η of the built measure")
    check81.add_argument(
        "--spec", type=Path, default=None, help="normal_scale_mixture spec replacing the built measure"
    )
    add_n_list_argument(check81)
    add_report_arguments(check81)
    check81.set_defaults(handler=run_check81)


@inject
def _measure_from_spec(
    path: Path,
    density_service: DensityService = Provide[Container.density_service],
) -> MixingMeasure:
    distribution = density_service.distribution_from_spec(load_distribution_spec(path))
    if not isinstance(distribution, NormalScaleMixtureDistribution):
        raise UnsupportedFamily(f"{path} must describe a normal_scale_mixture, got {distribution.family.value}")
    return distribution.measure


@inject
def _emit(
    table: ExperimentTable,
    args: argparse.Namespace,
    report_service: ReportService = Provide[Container.report_service],
    logger: Logger = Provide[Container.logger],
) -> None:
    path = report_service.emit_report(table, args.format, args.out)
    invalid = len(table.rows) - len(table.valid_rows)
    if invalid:
        logger.warning(f"{invalid} of {len(table.rows)} rows are invalid, see the error column")
    for key, value in table.metadata.items():
        logger.info(f"{table.kind.value} {key}: {value}")
    print(path)


@inject
async def run_converge(
    args: argparse.Namespace,
    experiment_service: ExperimentService = Provide[Container.experiment_service],
) -> None:
    table = await experiment_service.converge_experiment(
        load_distribution_spec(args.spec), args.s, args.n_list
    )
    _emit(table, args)


@inject
async def run_corollary12(
    args: argparse.Namespace,
    experiment_service: ExperimentService = Provide[Container.experiment_service],
) -> None:
    table = await experiment_service.corollary12_experiment(
        load_distribution_spec(args.spec), args.k, args.s, args.n_list
    )
    _emit(table, args)


@inject
async def run_lowerbound(
    args: argparse.Namespace,
    experiment_service: ExperimentService = Provide[Container.experiment_service],
) -> None:
    if not 2 < args.s < 4:
        raise ValueError(f"Lower-bound experiment needs 2 < s < 4, got {args.s}")
    if args.eta <= 1:
        raise ValueError(f"Lower-bound experiment needs η > 1, got {args.eta}")

    measure = _measure_from_spec(args.spec) if args.spec else None
    table = await experiment_service.lowerbound_experiment(args.s, args.eta, args.n_list, measure)
    _emit(table, args)


@inject
def run_check81(
    args: argparse.Namespace,
    experiment_service: ExperimentService = Provide[Container.experiment_service],
    mixture_service: MixtureService = Provide[Container.mixture_service],
) -> None:
    measure = (
        _measure_from_spec(args.spec)
        if args.spec
        else mixture_service.theorem13_measure(args.s, args.eta)
    )
    table = experiment_service.condition81_check(measure, args.s, args.gamma, args.n_list)
    _emit(table, args)
