import argparse
from pathlib import Path

from dependency_injector.wiring import Provide, inject

from src.api.commands.common import add_report_arguments, load_distribution_spec
from src.container import Container
from src.core.logger import Logger
from src.edgeworth.approximant import EdgeworthApproximant
from src.services.density_service import DensityService
from src.services.entropy_service import EntropyService
from src.services.mappers.report_mapper import domain_to_db_entropy_report
from src.services.report_service import ReportService
from src.storage.repositories.models.report_documents import (
    EdgeworthPointDocument,
    EntropyReportDocument,
)
from src.utils.grid_utils import parse_grid


def register(subparsers: argparse._SubParsersAction) -> None:
    edgeworth = subparsers.add_parser("edgeworth", help="Evaluate φ_m, Φ_m and p_n on a grid")
    edgeworth.add_argument("--spec", type=Path, required=True, help="JSON distribution spec")
    edgeworth.add_argument("--m", type=int, required=True, help="Approximant order m >= 2")
    edgeworth.add_argument("--n", type=int, required=True, help="Number of summands")
    edgeworth.add_argument("--grid", type=parse_grid, default=None, help="lo,hi,n_points")
    add_report_arguments(edgeworth)
    edgeworth.set_defaults(handler=run_edgeworth)

    entropy = subparsers.add_parser("entropy", help="Relative entropy to the standard normal")
    entropy.add_argument("--density", type=Path, required=True, help="Grid density file")
    entropy.add_argument("--s", type=float, default=2.0, help="Moment order used for the tail split")
    entropy.add_argument("--n", type=int, default=3, help="n used for the tail split radius")
    add_report_arguments(entropy)
    entropy.set_defaults(handler=run_entropy)


@inject
def run_edgeworth(
    args: argparse.Namespace,
    density_service: DensityService = Provide[Container.density_service],
    report_service: ReportService = Provide[Container.report_service],
    logger: Logger = Provide[Container.logger],
) -> None:
    distribution = density_service.distribution_from_spec(load_distribution_spec(args.spec))
    approximant = EdgeworthApproximant.from_cumulants(distribution.cumulants(args.m), args.m)

    grid = args.grid or density_service.default_grid(args.n)
    p_n = density_service.convolve_power(distribution, args.n, grid)
    phi_m = approximant.density(args.n, grid.x)
    Phi_m = approximant.cdf(args.n, grid.x)

    documents = [
        EdgeworthPointDocument(x=float(x), phi_m=float(a), Phi_m=float(b), p_n=float(c))
        for x, a, b, c in zip(grid.x, phi_m, Phi_m, p_n.values)
    ]
    path = report_service.emit_documents(
        documents, EdgeworthPointDocument, "edgeworth", args.format, args.out
    )

    sup_error = max(abs(d.phi_m - d.p_n) for d in documents)
    print(f"sup |p_n - φ_m| = {sup_error:.6e} over {len(documents)} points")
    logger.info(f"Edgeworth table for {distribution.description}, m={args.m}, n={args.n} written to {path}")


@inject
def run_entropy(
    args: argparse.Namespace,
    density_service: DensityService = Provide[Container.density_service],
    entropy_service: EntropyService = Provide[Container.entropy_service],
    report_service: ReportService = Provide[Container.report_service],
    logger: Logger = Provide[Container.logger],
) -> None:
    density = density_service.grid_density_repository.load(args.density)
    report = entropy_service.relative_entropy_std(density, entropy_service.tail_split(args.s, args.n))
    check = entropy_service.matched_moment_identity(density)

    document = domain_to_db_entropy_report(report, check)
    path = report_service.emit_documents(
        [document], EntropyReportDocument, "entropy", args.format, args.out
    )

    print(f"D = {report.D_total:.17g}")
    print(f"D(matched) = {check.D_matched:.17g}")
    logger.info(f"Entropy report for {args.density} written to {path}")
