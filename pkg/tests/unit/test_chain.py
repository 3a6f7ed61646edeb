"""Unit tests for the discrete difference chain."""

import numpy as np
import pytest

from meancycle.analytic.catalog import IidFamily, lambda_iid
from meancycle.models.distributions import Bernoulli, DiscreteUniform, Geometric
from meancycle.models.matrix import MatrixModel, Symmetry, transform_apply
from meancycle.solvers.chain import build_chain, lambda_discrete, recurrent_class, stationary
from meancycle.utils.exceptions import InvalidModelError, SupportExplosionError
from tests.conftest import DISCRETE_MODELS, const, exp, iid


def test_constant_matrix_is_periodic_chain():
    """Test [[1, 2], [3, 0]] alternates between two states with cycle mean 5/2."""
    m = MatrixModel.of(const(1), const(2), const(3), const(0))
    ch = build_chain(m)
    assert ch.support.tolist() == [0.0, 1.0]
    assert np.allclose(stationary(ch), [0.5, 0.5])
    assert ch.increment_mean.tolist() == [2.0, 3.0]
    assert lambda_discrete(m).value == pytest.approx(2.5, abs=1e-12)


def test_bernoulli_support():
    """Test i.i.d. Bernoulli entries keep Y in {-1, 0, 1}."""
    ch = build_chain(iid(Bernoulli(p=0.5)))
    assert ch.support.tolist() == [-1.0, 0.0, 1.0]
    assert np.allclose(ch.transition.sum(axis=1), 1.0)


def test_discrete_uniform_one():
    """Test the chain reproduces 6/7."""
    assert lambda_discrete(iid(DiscreteUniform(m=1))).value == pytest.approx(6 / 7, abs=1e-12)


@pytest.mark.parametrize("p", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
def test_bernoulli_matches_closed_form(p):
    """Test the Bernoulli ratio across p."""
    chain = lambda_discrete(iid(Bernoulli(p=p))).value
    assert chain == pytest.approx(lambda_iid(IidFamily.BERNOULLI, p).value, abs=1e-12)


@pytest.mark.parametrize("p, expected", [(0.1, 0.301897499557), (0.3, 0.644230413039)])
def test_bernoulli_reference_values(p, expected):
    """Test two Bernoulli values to 12 digits."""
    assert lambda_discrete(iid(Bernoulli(p=p))).value == pytest.approx(expected, abs=1e-11)


@pytest.mark.parametrize("p", [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8])
def test_geometric_matches_closed_form(p):
    """Test truncated geometric entries against N(p)/D(p)."""
    chain = lambda_discrete(iid(Geometric(p=p))).value
    assert chain == pytest.approx(lambda_iid(IidFamily.GEOMETRIC, p).value, abs=1e-6)


def test_discrete_uniform_two_per_unit():
    """Test m = 2 against the three-decimal constant per unit."""
    value = lambda_discrete(iid(DiscreteUniform(m=2))).value
    assert value == pytest.approx(1.605586194627291, abs=1e-9)
    assert value / 2 == pytest.approx(0.803, abs=5e-4)


@pytest.mark.parametrize("g", list(Symmetry))
@pytest.mark.parametrize("m", DISCRETE_MODELS)
def test_invariant_under_symmetries(m, g):
    """Test the chain value does not depend on the orbit representative."""
    base = lambda_discrete(m).value
    assert lambda_discrete(transform_apply(m, g)).value == pytest.approx(base, abs=1e-12)


def test_transient_states_get_no_mass():
    """Test states left behind after the first step carry zero weight."""
    m = MatrixModel.of(const(1), const(0), const(0), const(0))
    ch = build_chain(m)
    assert ch.support.tolist() == [-1.0, 0.0]
    assert recurrent_class(ch).tolist() == [0]
    assert stationary(ch).tolist() == [1.0, 0.0]
    assert lambda_discrete(m).value == 1.0


def test_rejects_continuous_entry():
    """Test an exponential entry has no finite support."""
    with pytest.raises(InvalidModelError):
        lambda_discrete(MatrixModel.of(exp(1.0), const(1), const(1), const(1)))


def test_support_explosion():
    """Test the state limit is enforced."""
    with pytest.raises(SupportExplosionError) as exc:
        build_chain(iid(DiscreteUniform(m=2)), max_states=3)
    assert exc.value.limit == 3
