"""CLI tests: subcommands, report formats and exit status."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from quantum_fragments.cli.main import cli
from quantum_fragments.models.experiment import Report, ResultRow
from quantum_fragments.utils.reporting import CSV_COLUMNS


@pytest.fixture
def runner():
    # keep stderr diagnostics out of the parsed report
    return CliRunner(env={"QFRAG_LOG_LEVEL": "ERROR"})


def rows_by_name(output: str):
    return {row["name"]: row for row in json.loads(output)["rows"]}


def test_help_lists_every_experiment(runner):
    result = runner.invoke(cli, ["--help"])
    assert result.exit_code == 0
    for name in ("toy", "chsh", "ks", "gaussian", "hardy", "pbr", "mach-zehnder"):
        assert name in result.output


def test_chsh_enumerate(runner):
    result = runner.invoke(cli, ["chsh", "enumerate"])
    assert result.exit_code == 0, result.output
    row = rows_by_name(result.output)["max deterministic win"]
    assert row["computed"] == 0.75
    assert row["passed"] is True


def test_chsh_quantum(runner):
    result = runner.invoke(cli, ["chsh", "quantum"])
    assert result.exit_code == 0, result.output
    rows = rows_by_name(result.output)
    assert rows["quantum win (canonical singlet)"]["computed"] == 0.8535533906


def test_chsh_default_mode(runner):
    result = runner.invoke(cli, ["chsh"])
    assert result.exit_code == 0
    assert "max deterministic win" in result.output


def test_invalid_mode(runner):
    result = runner.invoke(cli, ["chsh", "bell"])
    assert result.exit_code == 2


def test_csv_output(runner):
    result = runner.invoke(cli, ["mach-zehnder", "--format", "csv"])
    assert result.exit_code == 0, result.output
    rows = list(csv.DictReader(io.StringIO(result.output)))
    assert list(rows[0]) == CSV_COLUMNS
    assert len(rows) == 4
    assert all(row["passed"] == "true" for row in rows)


def test_toy_with_sequence(runner):
    result = runner.invoke(cli, ["toy", "--state", "b", "--sequence", "B,A"])
    assert result.exit_code == 0, result.output
    assert rows_by_name(result.output)["P(b, a | b)"]["computed"] == 0.5


def test_parameters_echoed(runner):
    result = runner.invoke(cli, ["gaussian", "epr", "--squeeze", "0.01", "--seed", "7"])
    assert result.exit_code == 0, result.output
    parameters = json.loads(result.output)["parameters"]
    assert parameters["squeeze"] == 0.01
    assert parameters["seed"] == 7
    assert parameters["mode"] == "epr"


def test_bad_resolution(runner):
    result = runner.invoke(cli, ["ks", "overlap", "--resolution", "8x8"])
    assert result.exit_code == 1
    assert "below the minimum" in result.output


def test_malformed_resolution(runner):
    result = runner.invoke(cli, ["ks", "--resolution", "fine"])
    assert result.exit_code == 1
    assert "400x800" in result.output


def test_negative_samples(runner):
    result = runner.invoke(cli, ["chsh", "simulate", "--samples", "0"])
    assert result.exit_code == 1
    assert "samples" in result.output


def test_missing_model_file(runner, tmp_path):
    result = runner.invoke(cli, ["hardy", "--model", str(tmp_path / "absent.json")])
    assert result.exit_code == 1
    assert "Cannot read model file" in result.output


def test_invalid_model_file_reports_path(runner, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"lambda_count": 2, "preparations": {"psi1": [0.9, 0.0]}}))
    result = runner.invoke(cli, ["pbr", "--model", str(path)])
    assert result.exit_code == 1
    assert "$.preparations.psi1" in result.output


def test_failing_report_exits_nonzero(runner, mocker):
    failing = Report(experiment="toy", rows=[ResultRow.flag("broken", False)])
    mocker.patch("quantum_fragments.services.experiment_service.run", return_value=failing)
    result = runner.invoke(cli, ["toy"])
    assert result.exit_code == 1
    assert rows_by_name(result.output)["broken"]["passed"] is False


def test_hardy_default(runner):
    result = runner.invoke(cli, ["hardy", "--m", "4"])
    assert result.exit_code == 0, result.output
    assert "coarse 1-point model rejected" in result.output


def test_non_numeric_model_file_reports_path(runner, tmp_path):
    path = tmp_path / "model.json"
    path.write_text(json.dumps({"lambda_count": 2, "preparations": {"psi1": {"a": 1}}}))
    result = runner.invoke(cli, ["hardy", "--model", str(path)])
    assert result.exit_code == 1
    assert "$.preparations.psi1" in result.output
    assert "Traceback" not in result.output
