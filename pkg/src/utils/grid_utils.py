import numpy as np

from src.core.settings import Settings
from src.services.models.density_models import GridParams


def validate_power_of_two(n_points: int) -> None:
    """Validate that the grid size is a power of two"""
    if n_points < 2 or n_points & (n_points - 1):
        raise ValueError(f"Grid size must be a power of two, got {n_points}")


def default_grid(n: int, settings: Settings) -> GridParams:
    """[-L, L] with L = max(L_min, offset + √(2 log n)), tail room growing slowly with n"""
    validate_power_of_two(settings.GRID_POINTS)
    half_width = max(
        settings.GRID_MIN_HALF_WIDTH,
        settings.GRID_TAIL_OFFSET + np.sqrt(2.0 * np.log(max(n, 1))),
    )
    return GridParams(lo=-half_width, hi=half_width, n_points=settings.GRID_POINTS)


def parse_grid(text: str) -> GridParams:
    """Parse "lo,hi,n_points" as given on the command line"""
    try:
        lo, hi, n_points = text.split(",")
        grid = GridParams(lo=float(lo), hi=float(hi), n_points=int(n_points))
    except ValueError as e:
        raise ValueError(f"Grid must be given as lo,hi,n_points, got {text!r}: {e}")

    if grid.hi <= grid.lo:
        raise ValueError(f"Grid upper bound {grid.hi} must exceed lower bound {grid.lo}")
    validate_power_of_two(grid.n_points)
    return grid
