import logging
from pathlib import Path
from typing import Literal

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    NAME: str = "entropic-edgeworth"
    LOGGING_LEVEL: int = logging.INFO
    LOGGING_FORMAT: str = (
        "%(asctime)s - %(name)s [grid=%(grid_points)d seed=%(seed)d] - %(levelname)s - %(message)s"
    )

    # Grid
    GRID_POINTS: int = 2**14
    GRID_MIN_HALF_WIDTH: float = 12.0
    GRID_TAIL_OFFSET: float = 8.0
    NORMALIZATION_TOLERANCE: float = 1e-9
    MASS_CORRECTION_TOLERANCE: float = 1e-6
    GRID_CONVERGENCE_CHECK: bool = True
    GRID_CONVERGENCE_TOLERANCE: float = 1e-9

    # Entropy
    ENTROPY_FLOOR: float = -1e-9
    ENTROPY_ZERO_CUTOFF: float = 1e-300
    RHO_N_MODE: Literal["constant", "loglog"] = "constant"
    RHO_N: float = 3.0

    # Coefficients
    MULTI_DIM_MAX_D: int = 3
    MULTI_DIM_MAX_J: int = 2
    QUADRATURE_NODES: int = 40

    # Truncation, None means floor(s) + 1
    TRUNCATION_M0: int | None = None

    # Mixtures
    MIXTURE_RTOL: float = 1e-10
    LOWERBOUND_SIGMA_SPLIT: float = 2.0
    LOWERBOUND_TAIL_WEIGHT: float = 0.04
    MONTE_CARLO_DRAWS: int = 1_000_000
    SEED: int = 20110519

    # Reports
    REPORT_DIGITS: int = 17
    OUTPUT_PATH: Path = Path("reports")
    CONCURRENT_ROWS: int = 1
