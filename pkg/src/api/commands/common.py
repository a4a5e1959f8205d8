import argparse
from pathlib import Path

from src.api.mappers.input_mappers import load_schema, to_distribution_spec
from src.api.schemas.input_schemas import DistributionSpecSchema
from src.services.models.density_models import DistributionSpec


def parse_n_list(text: str) -> list[int]:
    """Comma-separated integers, e.g. "16,32,64" """
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"n list must be comma-separated integers, got {text!r}")


def add_report_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", type=Path, default=None, help="Report file, defaults under OUTPUT_PATH")
    parser.add_argument(
        "--format", choices=["csv", "json-lines"], default="csv", help="Report format"
    )


def add_n_list_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--n-list",
        type=parse_n_list,
        default=None,
        help="Ascending comma-separated n values, defaults to 16,32,...,1024",
    )


def load_distribution_spec(path: Path) -> DistributionSpec:
    return to_distribution_spec(load_schema(path, DistributionSpecSchema))
