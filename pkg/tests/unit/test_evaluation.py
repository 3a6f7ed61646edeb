"""Unit tests for evaluation routing and Monte Carlo comparison."""

import math
from fractions import Fraction

import pytest

from meancycle.analytic.constant_entry import lambda_zero_row_const_diag
from meancycle.models.cases import CaseFamily
from meancycle.models.distributions import Bernoulli, DiscreteUniform, UniformContinuous
from meancycle.models.matrix import MatrixModel, Symmetry
from meancycle.models.schemas import Estimate, SimConfig
from meancycle.services import evaluation
from meancycle.services.evaluation import compare, evaluate_exact, format_fraction, z_score
from meancycle.utils.exceptions import NoClosedFormError
from tests.conftest import ZERO, const, exp, iid


@pytest.mark.parametrize(
    "model, method, value",
    [
        (iid(exp(1.0)), "closed_form", 407 / 228),
        (iid(DiscreteUniform(m=1)), "closed_form", 6 / 7),
        (iid(DiscreteUniform(m=2)), "chain", 1.605586194627291),
        (MatrixModel.of(exp(1), exp(2), exp(3), exp(4)), "spectral", 1.116795570167),
        (MatrixModel.of(exp(1), exp(2), exp(2), exp(1)), "closed_form", 1.412289593316),
        (MatrixModel.of(exp(1), exp(1), ZERO, ZERO), "closed_form", 17 / 14),
        (MatrixModel.of(exp(1), ZERO, ZERO, const(1)), "closed_form", 1.15000227),
        (MatrixModel.of(exp(1), const(1), ZERO, ZERO), "arctan_closed_form", 1.073612),
        (MatrixModel.of(Bernoulli(p=0.5), const(3), ZERO, ZERO), "chain", 1.5),
    ],
)
def test_dispatch(model, method, value):
    """Test each family reaches its formula or solver."""
    result = evaluate_exact(model)
    assert result.method == method
    assert result.value == pytest.approx(value, abs=1e-6)


@pytest.mark.parametrize(
    "model",
    [
        iid(exp(1.0)),
        MatrixModel.of(exp(1), exp(2), exp(3), exp(4)),
        MatrixModel.of(ZERO, exp(1), exp(2), ZERO),
        MatrixModel.of(exp(1), ZERO, ZERO, const(1)),
        MatrixModel.of(exp(2), const(2), ZERO, ZERO),
        MatrixModel.of(const(1), const(2), const(3), const(0)),
        iid(Bernoulli(p=0.3)),
    ],
)
def test_lambda_bounded_by_mean_cycle(model):
    """Test lambda >= max(E a11, E a22, (E a12 + E a21) / 2)."""
    a11, a12, a21, a22 = model.entry_means()
    assert evaluate_exact(model).value >= max(a11, a22, (a12 + a21) / 2) - 1e-12


def test_off_diagonal_mean_alone_is_not_a_bound():
    """Test a large a12 on a cycle with a zero a21 does not force lambda above E a12."""
    model = MatrixModel.of(exp(2.0), const(2.0), ZERO, ZERO)
    value = evaluate_exact(model).value
    assert 1.0 <= value < max(model.entry_means())


def test_exact_fraction_reported():
    """Test rational results carry their reduced fraction."""
    assert evaluate_exact(iid(exp(1.0))).exact == "407/228"
    assert evaluate_exact(MatrixModel.of(exp(1), exp(1), exp(1), ZERO)).exact == "439/278"


def test_printed_constant_reports_precision():
    """Test the uniform constant is flagged as low precision."""
    result = evaluate_exact(iid(UniformContinuous(lo=0.0, hi=1.0)))
    assert result.method == "printed_constant"
    assert result.low_precision
    assert result.precision == 5e-4


def test_quadrature_route():
    """Test a non-exponential zero-row law is integrated."""
    result = evaluate_exact(MatrixModel.of(UniformContinuous(lo=0.0, hi=1.0), const(1.0), ZERO, ZERO))
    assert result.family is CaseFamily.ZERO_ROW_GENERAL
    assert result.method == "quadrature"
    assert 0.5 < result.value < 1.0


def test_transform_is_reported():
    """Test a match on a swapped model names the transform used."""
    result = evaluate_exact(MatrixModel.of(ZERO, ZERO, exp(3.0), const(0.5)))
    assert result.family is CaseFamily.ZERO_ROW_CONST_DIAG
    assert result.transform is Symmetry.SWAP
    assert result.value == lambda_zero_row_const_diag(3.0, 0.5).value


def test_no_closed_form_raises():
    """Test a model outside every family."""
    with pytest.raises(NoClosedFormError):
        evaluate_exact(MatrixModel.of(UniformContinuous(lo=0, hi=1), exp(1), exp(1), exp(1)))


def test_format_fraction():
    """Test fraction rendering."""
    assert format_fraction(Fraction(407, 228)) == "407/228"
    assert format_fraction(Fraction(2)) == "2"
    assert format_fraction(None) is None


def test_z_score():
    """Test the combined scale and the zero-scale cases."""
    assert z_score(1.1, 0.03, 1.0, 0.04) == pytest.approx(2.0)
    assert z_score(2.0, 0.0, 2.0) == 0.0
    assert z_score(2.5, 0.0, 2.0) == math.inf
    assert z_score(1.5, 0.0, 2.0) == -math.inf


def test_compare_constant_model(quick_config):
    """Test an exact Monte Carlo estimate passes with z = 0."""
    record = compare(MatrixModel.of(const(1), const(2), const(3), const(0)), quick_config, workers=1)
    assert record.exact.value == pytest.approx(2.5)
    assert record.estimate.lambda_hat == pytest.approx(2.5, abs=1e-4)
    assert record.passed


def test_compare_without_closed_form(quick_config):
    """Test NoClosedForm models report the estimate only."""
    model = MatrixModel.of(UniformContinuous(lo=0, hi=1), exp(1), exp(2), exp(3))
    record = compare(model, quick_config, workers=1)
    assert record.family is CaseFamily.NO_CLOSED_FORM
    assert record.exact is None
    assert record.z_score is None
    assert record.passed


def test_compare_flags_disagreement(monkeypatch):
    """Test |z| above the threshold fails the record."""
    cfg = SimConfig(steps=1_000, replications=2, seed=1, renorm_period=64)

    def fake_simulate(m, cfg=None, workers=None):
        return Estimate(lambda_hat=2.0, stderr=0.01, per_replication=[1.99, 2.01],
                        steps=cfg.steps, replications=cfg.replications, seed=cfg.seed,
                        renorm_period=cfg.renorm_period)

    monkeypatch.setattr(evaluation, "simulate", fake_simulate)
    record = compare(iid(exp(1.0)), cfg, threshold=4.0)
    assert record.z_score == pytest.approx((2.0 - 407 / 228) / 0.01)
    assert not record.passed
