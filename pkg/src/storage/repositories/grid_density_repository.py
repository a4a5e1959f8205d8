import re
from pathlib import Path

import numpy as np

from src.core.exceptions import IoFailure
from src.core.settings import Settings
from src.services.models.density_models import GridDensity

HEADER_PATTERN = re.compile(
    r"#\s*lo=(?P<lo>\S+)\s+hi=(?P<hi>\S+)\s+n_points=(?P<n_points>\d+)"
)


class GridDensityRepository:
    """Two-column "x,value" text files with a "# lo=<> hi=<> n_points=<>" header line"""

    def __init__(self, settings: Settings):
        self.settings = settings

    def _format(self, value: float) -> str:
        return f"{value:.{self.settings.REPORT_DIGITS}g}"

    def save(self, density: GridDensity, path: Path) -> Path:
        lines = [
            f"# lo={self._format(density.lo)} hi={self._format(density.hi)} n_points={density.n_points}"
        ]
        lines += [
            f"{self._format(x)},{self._format(v)}" for x, v in zip(density.x, density.values)
        ]
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        except OSError as e:
            raise IoFailure(f"Could not write grid density {path}: {e}")
        return path

    def load(self, path: Path) -> GridDensity:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise IoFailure(f"Could not read grid density {path}: {e}")

        lines = [line for line in text.splitlines() if line.strip()]
        match = HEADER_PATTERN.match(lines[0]) if lines else None
        if match is None:
            raise IoFailure(f"Grid density {path} has no '# lo=<> hi=<> n_points=<>' header")

        try:
            values = np.array([float(line.split(",")[1]) for line in lines[1:]])
        except (IndexError, ValueError) as e:
            raise IoFailure(f"Grid density {path} has a malformed row: {e}")

        n_points = int(match["n_points"])
        if len(values) != n_points:
            raise IoFailure(
                f"Grid density {path} declares {n_points} points but has {len(values)} rows"
            )
        if np.any(values < 0):
            raise IoFailure(f"Grid density {path} has negative values")

        return GridDensity(lo=float(match["lo"]), hi=float(match["hi"]), values=values)
