import argparse

from dependency_injector.wiring import Provide, inject

from src.api.commands.common import add_report_arguments
from src.api.mappers.input_mappers import load_schema, to_cumulant_set
from src.api.schemas.input_schemas import CumulantsFileSchema
from src.container import Container
from src.core.exceptions import DimensionMismatch
from src.core.logger import Logger
from src.services.coefficient_service import CoefficientService
from src.services.report_service import ReportService
from src.storage.repositories.models.report_documents import CoefficientDocument


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("coeffs", help="Expansion coefficients c_j")
    parser.add_argument("--cumulants", default=None, help="JSON file of standardized cumulants")
    parser.add_argument("--j", type=int, required=True, help="Coefficient index j >= 1")
    parser.add_argument(
        "--mode", choices=["exact", "symbolic", "quadrature"], default="exact"
    )
    parser.add_argument("--d", type=int, default=1, help="Dimension, symbolic mode only")
    parser.add_argument("--nodes", type=int, default=None, help="Gauss-Hermite nodes, quadrature mode")
    add_report_arguments(parser)
    parser.set_defaults(handler=run_coeffs)


@inject
def run_coeffs(
    args: argparse.Namespace,
    coefficient_service: CoefficientService = Provide[Container.coefficient_service],
    report_service: ReportService = Provide[Container.report_service],
    logger: Logger = Provide[Container.logger],
) -> None:
    if args.mode == "symbolic":
        polynomial = coefficient_service.cj_symbolic(args.j, args.d)
        value_text = polynomial.to_text()
        value_float = None
        if args.cumulants is not None:
            if args.d != 1:
                raise DimensionMismatch(f"A cumulants file describes a 1-dimensional law, got --d {args.d}")
            c = to_cumulant_set(load_schema(args.cumulants, CumulantsFileSchema))
            value_float = float(polynomial.evaluate({nu: c[nu.norm] for nu in polynomial.polynomial.symbols}))
    else:
        if args.cumulants is None:
            raise ValueError(f"--cumulants is required in {args.mode} mode")
        c = to_cumulant_set(load_schema(args.cumulants, CumulantsFileSchema))
        if args.mode == "exact":
            value = coefficient_service.cj_exact(c, args.j)
        else:
            value = coefficient_service.cj_quadrature(c, args.j, args.nodes)
        value_text = str(value)
        value_float = float(value)

    print(f"c_{args.j} = {value_text}")
    if value_float is not None and args.mode != "quadrature":
        print(f"c_{args.j} ~ {value_float:.17g}")

    document = CoefficientDocument(j=args.j, mode=args.mode, value=value_text, value_float=value_float)
    path = report_service.emit_documents([document], CoefficientDocument, "coeffs", args.format, args.out)
    logger.info(f"Coefficient written to {path}")
