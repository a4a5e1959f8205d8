import json
import math

import numpy as np
import pytest

from src.core.exceptions import IoFailure
from src.services.mappers.report_mapper import db_to_domain_convergence_row
from src.services.models.density_models import GridDensity
from src.services.models.experiment_models import (
    Condition81Row,
    ConvergenceRow,
    ExperimentKind,
    ExperimentTable,
)
from src.storage.repositories.models.report_documents import ConvergenceRowDocument


def convergence_row(n: int, D_n: float, valid: bool = True) -> ConvergenceRow:
    return ConvergenceRow(
        n=n,
        D_n=D_n,
        prediction=0.0,
        residual=D_n,
        scaled_residual=D_n * n,
        delta_n=1 / n,
        T_used=2.5,
        tail_second_moment=1e-4,
        clamped_mass=0.0,
        valid=valid,
        error=None if valid else "grid too coarse",
    )


def test_empty_table_writes_header(report_service, tmp_path):
    path = report_service.emit_report(
        ExperimentTable(kind=ExperimentKind.CONVERGE, rows=[]), path=tmp_path / "empty.csv"
    )
    assert path.read_text() == (
        "n,D_n,prediction,residual,scaled_residual,delta_n,T_used,"
        "tail_second_moment,clamped_mass,grid_drift,valid,error\n"
    )


def test_default_path_uses_output_dir(report_service, settings):
    path = report_service.emit_report(
        ExperimentTable(kind=ExperimentKind.CONDITION81, rows=[Condition81Row(n=16, lower_limit=8.0, value=0.5)])
    )
    assert path == settings.OUTPUT_PATH / "check81.csv"
    assert path.read_text().splitlines() == ["n,lower_limit,value", "16,8,0.5"]


def test_csv_values(report_service, tmp_path):
    table = ExperimentTable(
        kind=ExperimentKind.CONVERGE,
        rows=[convergence_row(16, 0.0), convergence_row(32, float("nan"), valid=False)],
    )
    lines = report_service.emit_report(table, path=tmp_path / "rows.csv").read_text().splitlines()

    gaussian = lines[1].split(",")
    assert gaussian[:3] == ["16", "0", "0"]
    assert gaussian[-2:] == ["true", ""]

    invalid = lines[2].split(",")
    assert invalid[1] == ""
    assert invalid[-2:] == ["false", "grid too coarse"]


def test_csv_round_trip(report_service, tmp_path):
    rows = [convergence_row(16, 1 / 48), convergence_row(32, float("nan"), valid=False)]
    path = report_service.emit_report(
        ExperimentTable(kind=ExperimentKind.CONVERGE, rows=rows), path=tmp_path / "rows.csv"
    )
    documents = report_service.read_documents(path, ConvergenceRowDocument)

    restored = [db_to_domain_convergence_row(document) for document in documents]
    assert restored[0].D_n == 1 / 48
    assert restored[0].valid
    assert math.isnan(restored[1].D_n)
    assert not restored[1].valid
    assert restored[1].error == "grid too coarse"


def test_json_lines(report_service, tmp_path):
    rows = [convergence_row(16, 1 / 48), convergence_row(32, float("nan"), valid=False)]
    path = report_service.emit_report(
        ExperimentTable(kind=ExperimentKind.CONVERGE, rows=rows),
        format="json-lines",
        path=tmp_path / "rows.jsonl",
    )
    records = [json.loads(line) for line in path.read_text().splitlines()]
    assert records[0]["D_n"] == 1 / 48
    assert records[0]["valid"] is True
    assert records[1]["D_n"] is None

    documents = report_service.read_documents(path, ConvergenceRowDocument, format="json-lines")
    assert documents[0].n == 16
    assert documents[1].D_n is None


def test_reports_are_deterministic(report_service, tmp_path):
    table = ExperimentTable(
        kind=ExperimentKind.CONVERGE, rows=[convergence_row(n, 1 / (3 * n)) for n in (16, 32, 64)]
    )
    first = report_service.emit_report(table, path=tmp_path / "a.csv").read_bytes()
    second = report_service.emit_report(table, path=tmp_path / "b.csv").read_bytes()
    assert first == second


def test_unknown_format(report_service):
    with pytest.raises(ValueError):
        report_service.emit_report(ExperimentTable(kind=ExperimentKind.CONVERGE, rows=[]), format="xlsx")


def test_unwritable_path(report_service, tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(IoFailure):
        report_service.emit_report(
            ExperimentTable(kind=ExperimentKind.CONVERGE, rows=[]), path=blocker / "rows.csv"
        )


def test_grid_density_file(density_service, tmp_path):
    repository = density_service.grid_density_repository
    x = np.linspace(-8, 8, 257)
    density = GridDensity(lo=-8.0, hi=8.0, values=np.exp(-(x**2) / 2) / np.sqrt(2 * np.pi))

    loaded = repository.load(repository.save(density, tmp_path / "phi.txt"))
    assert loaded.n_points == 257
    assert loaded.lo == -8.0 and loaded.hi == 8.0
    np.testing.assert_allclose(loaded.values, density.values, rtol=1e-15)


@pytest.mark.parametrize(
    "content",
    [
        "",
        "x,value\n0,1\n",
        "# lo=-1 hi=1 n_points=3\n-1,0\n0,1\n",
        "# lo=-1 hi=1 n_points=2\n-1,0\n1,oops\n",
        "# lo=-1 hi=1 n_points=2\n-1,-0.5\n1,0.5\n",
    ],
)
def test_malformed_grid_density(density_service, tmp_path, content):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(IoFailure):
        density_service.grid_density_repository.load(path)


def test_missing_grid_density(density_service, tmp_path):
    with pytest.raises(IoFailure):
        density_service.grid_density_repository.load(tmp_path / "missing.txt")
