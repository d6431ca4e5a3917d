import json

import pytest
from click.testing import CliRunner

from ptcorr.apps.cli.main import EXIT_IO, EXIT_USAGE, cli
from ptcorr.modules.validation.checks import REGISTRY


@pytest.fixture
def runner():
    return CliRunner()


def _csv_body(text: str) -> list[str]:
    return [line for line in text.splitlines() if not line.startswith("#")]


def test_sweep_to_stdout(runner):
    args = [
        "sweep", "--var", "T", "--min", "0.5", "--max", "1.5", "--steps", "3",
        "--no-timestamp", "--workers", "1",
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    body = _csv_body(result.stdout)
    assert body[0] == "T,concurrence,bell_max,min_hs,min_hs_paper_scale,min_trace"
    assert len(body) == 4
    assert body[1].startswith("0.5,")
    assert "# generated:" not in result.stdout
    assert "# pt_operation: off" in result.stdout


def test_sweep_measures_and_files(runner, tmp_path):
    csv_path, svg_path = tmp_path / "f.csv", tmp_path / "f.svg"
    args = [
        "sweep", "--var", "B", "--min", "0", "--max", "3", "--steps", "4",
        "--measures", "fidelity,concurrence", "--workers", "1",
        "--out-csv", str(csv_path), "--out-svg", str(svg_path),
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert result.stdout == ""
    text = csv_path.read_text()
    assert "# generated:" in text
    assert "B,fidelity,concurrence" in text
    assert svg_path.read_text().startswith("<?xml")


def test_pt_sweep_default_time_axis(runner):
    args = ["pt-sweep", "--steps", "5", "--measures", "concurrence", "--no-timestamp", "--workers", "1"]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    body = _csv_body(result.stdout)
    assert body[0] == "t,concurrence"
    assert len(body) == 6
    assert "# pt_operation: on" in result.stdout


def test_pt_sweep_over_phi(runner):
    args = [
        "pt-sweep", "--var", "phi", "--min", "-1", "--max", "1", "--steps", "3", "--t", "0.5",
        "--measures", "bell_max", "--no-timestamp", "--workers", "1",
    ]  # fmt: skip
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    assert _csv_body(result.stdout)[0] == "phi,bell_max"


@pytest.mark.parametrize(
    "args",
    [
        ["sweep", "--var", "t", "--min", "0", "--max", "1", "--steps", "3"],
        ["sweep", "--var", "T", "--min", "2", "--max", "1", "--steps", "3"],
        ["sweep", "--var", "T", "--max", "1", "--steps", "3"],
        ["sweep", "--var", "T", "--T", "1", "--min", "0.5", "--max", "1", "--steps", "3"],
        ["sweep", "--var", "T", "--min", "0.5", "--max", "1", "--steps", "3", "--measures", "entropy"],
        ["pt-sweep", "--t", "1", "--steps", "3"],
        ["state", "--phi", "pi/2", "--t", "1"],
        ["state", "--T", "0"],
        ["state", "--phi", "sideways"],
        ["teleport", "--input-state", "x"],
        ["fig", "fig9"],
    ],
)
def test_usage_errors(runner, args):
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_USAGE, result.output


def test_unwritable_output(runner, tmp_path):
    args = ["sweep", "--var", "T", "--min", "0.5", "--max", "1", "--steps", "2", "--workers", "1",
            "--out-csv", str(tmp_path / "nope" / "out.csv")]  # fmt: skip
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_IO


def test_state(runner):
    result = runner.invoke(cli, ["state", "--T", "1"])
    assert result.exit_code == 0, result.output
    out = result.stdout
    assert out.startswith("J=4.5 gamma=0.05 B=1.5 T=1")
    for word in ("kappa/Z", "|01>", "R[3]", "concurrence", "min_hs_paper_scale", "min_trace"):
        assert word in out


def test_state_evolved(runner):
    result = runner.invoke(cli, ["state", "--t", "0.7", "--phi", "pi/3"])
    assert result.exit_code == 0, result.output
    assert "phi=1.0472" in result.stdout
    assert "kappa/Z" not in result.stdout


def test_teleport(runner):
    result = runner.invoke(cli, ["teleport", "--T", "1000"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert any(line.startswith("Psi-") for line in lines)
    value = float(lines[-1].split("=")[1])
    assert abs(value - 0.25) < 1e-3

    result = runner.invoke(cli, ["teleport", "--input-state", "1,0"])
    assert result.exit_code == 0, result.output


def test_config_file(runner, tmp_path):
    conf = tmp_path / "model.conf"
    conf.write_text("# coupling\nJ = 2\ngamma = 0.5\n")
    result = runner.invoke(cli, ["state", "--config", str(conf), "--gamma", "0.1"])
    assert result.exit_code == 0, result.output
    assert result.stdout.startswith("J=2 gamma=0.1 ")

    conf.write_text("J = 2\nvar = J\n")
    args = ["sweep", "--config", str(conf), "--min", "0", "--max", "1", "--steps", "2"]
    result = runner.invoke(cli, args)
    assert result.exit_code == EXIT_USAGE


def test_log_level_option(runner, tmp_path):
    result = runner.invoke(cli, ["--log-level", "FOO", "state"])
    assert result.exit_code == EXIT_USAGE
    assert isinstance(result.exception, SystemExit)
    assert "Traceback" not in result.output

    result = runner.invoke(cli, ["--log-level", "debug", "state", "--T", "1"])
    assert result.exit_code == 0, result.output

    conf = tmp_path / "noisy.conf"
    conf.write_text("log_level = loud\n")
    result = runner.invoke(cli, ["state", "--config", str(conf)])
    assert result.exit_code == EXIT_USAGE


def test_fig_deterministic(runner):
    args = ["fig", "fig1a", "--no-timestamp", "--workers", "1"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    assert "# recipe: fig1a" in first.stdout
    assert len(_csv_body(first.stdout)) == 201


def test_validate(runner):
    result = runner.invoke(cli, ["validate"])
    assert result.exit_code == 0, result.output
    lines = result.stdout.splitlines()
    assert len(lines) == len(REGISTRY)
    for line in lines:
        record = json.loads(line)
        assert set(record) == {"check", "status", "deviation", "tolerance"}
        assert record["status"] in ("pass", "info")


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "0.1.0" in result.stdout
