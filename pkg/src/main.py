import argparse
import asyncio
import inspect
import sys
from pathlib import Path

from pydantic import ValidationError

from src.api.commands import (
    coefficient_commands,
    density_commands,
    experiment_commands,
)
from src.core.exceptions import EntropyLabError, ExitCode
from src.setup import LabSetup


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entropic-edgeworth",
        description="Edgeworth-type expansions of the entropic distance to normality",
    )
    parser.add_argument("--config", type=Path, default=None, help="Flat KEY=value settings file")

    subparsers = parser.add_subparsers(dest="command", required=True)
    coefficient_commands.register(subparsers)
    density_commands.register(subparsers)
    experiment_commands.register(subparsers)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ExitCode.SUCCESS if e.code == 0 else ExitCode.VALIDATION_ERROR

    lab_setup = LabSetup(config_path=args.config)
    try:
        lab_setup.setup()

        result = args.handler(args)
        if inspect.isawaitable(result):
            asyncio.run(result)

    except EntropyLabError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return e.exit_code
    except (ValidationError, ValueError, OSError) as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return ExitCode.VALIDATION_ERROR
    finally:
        lab_setup.cleanup_resources()

    return ExitCode.SUCCESS


def main() -> None:
    sys.exit(int(run()))


if __name__ == "__main__":
    main()
