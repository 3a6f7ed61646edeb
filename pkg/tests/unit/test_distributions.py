"""Unit tests for entry laws."""

import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import stats

from meancycle.models.distributions import (
    Bernoulli,
    Constant,
    DiscreteUniform,
    Exponential,
    Geometric,
    TabulatedCdf,
    UniformContinuous,
    cdf,
    mean,
    parse_distribution,
    sample,
)

N = 100_000

LAWS = [
    Constant(value=2.5),
    Exponential(rate=2.0),
    UniformContinuous(lo=0.5, hi=2.0),
    Bernoulli(p=0.3),
    Geometric(p=0.5),
    DiscreteUniform(m=3),
    TabulatedCdf(t=(0.0, 1.0, 3.0), F=(0.2, 0.5, 1.0)),
]


def test_sample_constant(rng):
    """Test a constant always draws its value."""
    assert sample(Constant(value=2.5), rng) == 2.5
    assert np.all(sample(Constant(value=2.5), rng, 10) == 2.5)


def test_exponential_inverse_cdf():
    """Test -ln(U)/rate at U = e^-1."""
    assert Exponential(rate=1.0).from_uniform(math.exp(-1.0)) == pytest.approx(1.0)
    assert Exponential(rate=4.0).from_uniform(1.0) == 0.0


def test_discrete_uniform_frequency(rng):
    """Test the frequency of 1 under DiscreteUniform(1)."""
    draws = sample(DiscreteUniform(m=1), rng, N)
    assert set(np.unique(draws)) <= {0.0, 1.0}
    sigma = math.sqrt(0.25 / N)
    assert abs(draws.mean() - 0.5) < 4 * sigma


def test_cdf_examples():
    """Test the left-continuous distribution function."""
    assert cdf(Exponential(rate=1.0), 1.0) == pytest.approx(1 - math.exp(-1))
    assert cdf(Constant(value=2.0), 2.0) == 0.0
    assert cdf(Constant(value=2.0), 2.0001) == 1.0
    assert cdf(UniformContinuous(lo=0.0, hi=1.0), 0.25) == pytest.approx(0.25)
    assert cdf(Bernoulli(p=0.3), 0.0) == 0.0
    assert cdf(Bernoulli(p=0.3), 1.0) == pytest.approx(0.7)
    assert cdf(Bernoulli(p=0.3), 1.5) == 1.0
    assert cdf(Geometric(p=0.5), 1.0) == pytest.approx(0.5)
    assert cdf(Geometric(p=0.5), 1.5) == pytest.approx(0.75)
    assert cdf(DiscreteUniform(m=3), 2.0) == pytest.approx(0.5)


def test_cdf_vectorized():
    """Test array arguments return arrays of the same shape."""
    out = cdf(Exponential(rate=1.0), np.array([0.0, 1.0, 2.0]))
    assert out.shape == (3,)
    assert out[0] == 0.0


def test_means():
    """Test exact expectations."""
    assert mean(Exponential(rate=2.0)) == 0.5
    assert mean(DiscreteUniform(m=2)) == 1.0
    assert mean(Geometric(p=0.5)) == 1.0
    assert mean(UniformContinuous(lo=0.5, hi=2.0)) == 1.25
    assert mean(TabulatedCdf(t=(0.0, 1.0, 2.0), F=(0.0, 0.5, 1.0))) == pytest.approx(1.0)
    assert mean(TabulatedCdf(t=(1.0, 2.0), F=(0.5, 1.0))) == pytest.approx(1.25)


@pytest.mark.parametrize("law", LAWS, ids=lambda d: d.dist)
def test_cdf_monotone_with_limits(law):
    """Test every cdf is nondecreasing from 0 to 1."""
    grid = np.linspace(-1.0, 60.0, 2001)
    values = np.asarray(cdf(law, grid))
    assert values[0] == 0.0
    assert values[-1] == pytest.approx(1.0)
    assert np.all(np.diff(values) >= 0)


@pytest.mark.parametrize("law", LAWS, ids=lambda d: d.dist)
def test_sample_mean_matches(law, rng):
    """Test the empirical mean is within four standard errors."""
    draws = np.asarray(sample(law, rng, N), dtype=float)
    se = draws.std(ddof=1) / math.sqrt(N)
    assert abs(draws.mean() - mean(law)) <= 4 * se + 1e-12


@pytest.mark.parametrize(
    "law",
    [Exponential(rate=2.0), UniformContinuous(lo=0.5, hi=2.0), TabulatedCdf(t=(0.0, 1.0, 3.0), F=(0.0, 0.5, 1.0))],
    ids=lambda d: d.dist,
)
def test_kolmogorov_smirnov(law, rng):
    """Test continuous samplers against their cdf."""
    draws = sample(law, rng, N)
    result = stats.kstest(draws, lambda t: cdf(law, t))
    assert result.pvalue > 1e-3


def test_geometric_atoms_sum_to_one():
    """Test truncated atoms keep the tail mass."""
    values, probs = Geometric(p=0.5).atoms(1e-12)
    assert probs.sum() == pytest.approx(1.0, abs=1e-15)
    assert values[0] == 0.0
    assert probs[0] == pytest.approx(0.5)
    assert probs[-1] <= 1e-12


def test_parse_distribution():
    """Test the JSON entry schema."""
    assert parse_distribution({"dist": "exponential", "rate": 1.0}) == Exponential(rate=1.0)
    assert parse_distribution({"dist": "constant", "value": 0.0}) == Constant(value=0.0)
    tab = parse_distribution({"dist": "tabulated_cdf", "t": [0, 1], "F": [0, 1]})
    assert isinstance(tab, TabulatedCdf)
    assert tab.breakpoints == (0.0, 1.0)


@pytest.mark.parametrize(
    "data",
    [
        {"dist": "exponential", "rate": 0.0},
        {"dist": "constant", "value": -1.0},
        {"dist": "uniform", "lo": 1.0, "hi": 1.0},
        {"dist": "bernoulli", "p": 1.5},
        {"dist": "geometric", "p": 1.0},
        {"dist": "discrete_uniform", "m": -1},
        {"dist": "tabulated_cdf", "t": [0, 1], "F": [0, 0.9]},
        {"dist": "tabulated_cdf", "t": [1, 0], "F": [0, 1]},
        {"dist": "weibull", "shape": 2.0},
        {"dist": "exponential", "rate": 1.0, "extra": 1},
    ],
)
def test_invalid_parameters_rejected(data):
    """Test parameter constraints."""
    with pytest.raises(ValidationError):
        parse_distribution(data)
