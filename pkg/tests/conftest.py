"""Pytest configuration and fixtures."""

import json
import os

import numpy as np
import pytest
from fastapi.testclient import TestClient

from meancycle.main import app
from meancycle.models.distributions import Bernoulli, Constant, DiscreteUniform, Exponential
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import SimConfig

RUN_SLOW = os.environ.get("MCT_RUN_SLOW") == "1"

# Skip marker for the desk-scale Monte Carlo battery
slow = pytest.mark.skipif(not RUN_SLOW, reason="set MCT_RUN_SLOW=1 to run desk-scale Monte Carlo")

ZERO = Constant(value=0.0)


def exp(rate: float) -> Exponential:
    return Exponential(rate=rate)


def const(value: float) -> Constant:
    return Constant(value=value)


def iid(law) -> MatrixModel:
    return MatrixModel.of(law, law, law, law)


# Mixed discrete models for chain cross-checks
DISCRETE_MODELS = [
    MatrixModel.of(Bernoulli(p=0.2), DiscreteUniform(m=2), const(1), Bernoulli(p=0.7)),
    iid(DiscreteUniform(m=2)),
    MatrixModel.of(Bernoulli(p=0.5), const(1), const(0), DiscreteUniform(m=1)),
    MatrixModel.of(DiscreteUniform(m=3), Bernoulli(p=0.3), Bernoulli(p=0.6), const(1)),
    MatrixModel.of(const(1), Bernoulli(p=0.4), DiscreteUniform(m=2), Bernoulli(p=0.9)),
]


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale Monte Carlo runs")


@pytest.fixture
def client():
    """API test client."""
    with TestClient(app) as c:
        yield c


@pytest.fixture
def rng():
    """Seeded generator for sampler checks."""
    return np.random.default_rng(20240607)


@pytest.fixture
def quick_config():
    """Small simulation config for fast unit tests."""
    return SimConfig(steps=20_000, replications=4, seed=7, renorm_period=64)


@pytest.fixture
def iid_exp_model():
    """All four entries Exponential(1)."""
    return iid(exp(1.0))


@pytest.fixture
def write_model(tmp_path):
    """Write a model as a JSON file and return its path."""
    def _write(model: MatrixModel, name: str = "model.json"):
        path = tmp_path / name
        path.write_text(json.dumps({"entries": model.model_dump(mode="json", by_alias=True)}), encoding="utf-8")
        return path
    return _write
