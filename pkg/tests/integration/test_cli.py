"""Integration tests for the meancycle command line."""

from meancycle import cli
from meancycle.models.distributions import UniformContinuous
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import Estimate
from meancycle.services import evaluation
from tests.conftest import ZERO, const, exp, iid


# ============================================
# analytic
# ============================================

def test_analytic_iid_exponential(write_model, capsys):
    """Test the i.i.d. exponential value and its fraction."""
    code = cli.main(["analytic", str(write_model(iid(exp(1.0))))])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "IidExponential{mu=1}" in out
    assert "lambda = 1.785088 (= 407/228)" in out
    assert "method: closed_form" in out


def test_analytic_reports_transform(write_model, capsys):
    """Test a match found on the swapped model says so."""
    code = cli.main(["analytic", str(write_model(MatrixModel.of(ZERO, ZERO, exp(3.0), const(0.5))))])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "ZeroRowConstDiag" in out
    assert "transform: swap" in out


def test_analytic_no_closed_form(write_model, capsys):
    """Test exit code 3 and the simulate hint."""
    model = MatrixModel.of(UniformContinuous(lo=0, hi=1), exp(1), exp(2), exp(3))
    code = cli.main(["analytic", str(write_model(model))])
    captured = capsys.readouterr()
    assert code == cli.EXIT_NO_CLOSED_FORM
    assert "NoClosedForm" in captured.out
    assert "simulate" in captured.err


def test_analytic_invalid_model(tmp_path, capsys):
    """Test a missing entry is named on stderr with exit code 2."""
    path = tmp_path / "bad.json"
    path.write_text('{"entries": {"a11": {"dist": "constant", "value": 1}}}', encoding="utf-8")
    code = cli.main(["analytic", str(path)])
    assert code == cli.EXIT_INVALID
    assert "entries.a22" in capsys.readouterr().err


def test_analytic_missing_file(tmp_path, capsys):
    """Test an unreadable path is an input error."""
    assert cli.main(["analytic", str(tmp_path / "nope.json")]) == cli.EXIT_INVALID
    assert "error" in capsys.readouterr().err


# ============================================
# simulate / compare
# ============================================

def test_simulate_constant_model(write_model, capsys):
    """Test constant entries estimate their value with zero spread."""
    path = write_model(iid(const(2.0)))
    code = cli.main(["simulate", str(path), "--steps", "1000", "--reps", "2", "--threads", "1"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "lambda_hat = 2.000000, stderr = 0.000000" in out
    assert "steps=1000, replications=2" in out


def test_simulate_writes_csv(write_model, tmp_path):
    """Test one CSV row per replication."""
    out = tmp_path / "reps.csv"
    path = write_model(iid(const(2.0)))
    code = cli.main(["simulate", str(path), "--steps", "1000", "--reps", "3", "--threads", "1", "--csv", str(out)])
    assert code == cli.EXIT_OK
    assert out.read_text(encoding="utf-8").splitlines() == ["replication,lambda_hat", "0,2.0", "1,2.0", "2,2.0"]


def test_simulate_rejects_small_run(write_model, capsys):
    """Test SimConfig bounds surface as exit code 2."""
    code = cli.main(["simulate", str(write_model(iid(const(2.0)))), "--steps", "10"])
    assert code == cli.EXIT_INVALID
    assert "steps" in capsys.readouterr().err


def test_compare_passes(write_model, capsys):
    """Test an exact Monte Carlo estimate gives z = 0."""
    path = write_model(MatrixModel.of(const(1), const(2), const(3), const(0)))
    code = cli.main(["compare", str(path), "--steps", "1000", "--reps", "2", "--threads", "1"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "z = +0.000 (threshold 4): ok" in out


def test_compare_fails_on_disagreement(write_model, monkeypatch, capsys):
    """Test exit code 1 when |z| exceeds the threshold."""
    def fake_simulate(m, cfg=None, workers=None):
        return Estimate(lambda_hat=2.0, stderr=0.01, per_replication=[1.99, 2.01],
                        steps=cfg.steps, replications=cfg.replications, seed=cfg.seed,
                        renorm_period=cfg.renorm_period)

    monkeypatch.setattr(evaluation, "simulate", fake_simulate)
    code = cli.main(["compare", str(write_model(iid(exp(1.0)))), "--steps", "1000", "--reps", "2"])
    assert code == cli.EXIT_CHECK_FAILED
    assert "FAILED" in capsys.readouterr().out


# ============================================
# sweep / table
# ============================================

def test_sweep_preset_to_stdout(capsys):
    """Test the preset CSV on a four-point grid."""
    code = cli.main(["sweep", "--preset", "fig1", "--points", "4"])
    lines = capsys.readouterr().out.splitlines()
    assert code == cli.EXIT_OK
    assert lines[0] == "param,lambda"
    assert lines[1] == "0,1.0000000000"
    assert lines[2] == "1,1.1500022731"
    assert len(lines) == 5


def test_sweep_case_to_file(tmp_path):
    """Test an explicit case sweep written to --output."""
    out = tmp_path / "curve.csv"
    code = cli.main([
        "sweep", "--case", "ZeroRowConstDiag", "--vary", "c", "--from", "0", "--to", "1",
        "--points", "3", "--set", "nu=1", "--output", str(out),
    ])
    assert code == cli.EXIT_OK
    lines = out.read_text(encoding="utf-8").splitlines()
    assert len(lines) == 4
    assert lines[-1] == "1,1.1267578767"


def test_sweep_degenerate_range(capsys):
    """Test from == to is rejected."""
    code = cli.main(["sweep", "--case", "ConstDiagOneRandom", "--vary", "c", "--from", "1", "--to", "1"])
    assert code == cli.EXIT_INVALID


def test_sweep_unknown_case(capsys):
    """Test case names are checked."""
    code = cli.main(["sweep", "--case", "Nope", "--vary", "c", "--from", "0", "--to", "1"])
    assert code == cli.EXIT_INVALID
    assert "Unknown case" in capsys.readouterr().err


def test_sweep_bad_assignment(capsys):
    """Test --set needs NAME=VALUE."""
    code = cli.main(["sweep", "--preset", "fig1", "--set", "mu"])
    assert code == cli.EXIT_INVALID


def test_table_without_monte_carlo(capsys):
    """Test every exact reference row agrees."""
    code = cli.main(["table", "--no-mc"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "n=2, m=1" in out
    assert "uniform[0,1]" not in out
    assert " NO" not in out


def test_usage_errors():
    """Test argparse failures map to exit code 2 and --version to 0."""
    assert cli.main([]) == cli.EXIT_INVALID
    assert cli.main(["frobnicate"]) == cli.EXIT_INVALID
    assert cli.main(["--version"]) == cli.EXIT_OK
