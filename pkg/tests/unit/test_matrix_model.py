"""Unit tests for matrix models and the symmetry group."""

import pytest
from pydantic import ValidationError

from meancycle.models.distributions import Constant, Exponential
from meancycle.models.matrix import MatrixModel, Symmetry, orbit, rate_tuple, transform_apply
from meancycle.models.schemas import ModelFile
from tests.conftest import const, exp


@pytest.fixture
def abcd():
    return MatrixModel.of(exp(1), exp(2), exp(3), exp(4))


def test_transform_apply(abcd):
    """Test the action of each group element."""
    assert rate_tuple(transform_apply(abcd, Symmetry.IDENTITY)) == (1, 2, 3, 4)
    assert rate_tuple(transform_apply(abcd, Symmetry.TRANSPOSE)) == (1, 3, 2, 4)
    assert rate_tuple(transform_apply(abcd, Symmetry.SWAP)) == (4, 3, 2, 1)
    assert rate_tuple(transform_apply(abcd, Symmetry.TRANSPOSE_SWAP)) == (4, 2, 3, 1)


@pytest.mark.parametrize("g", list(Symmetry))
def test_group_elements_are_involutions(abcd, g):
    """Test applying any element twice returns the model."""
    assert transform_apply(transform_apply(abcd, g), g) == abcd


def test_transpose_swap_is_composition(abcd):
    """Test transpose after swap equals the combined element."""
    composed = transform_apply(transform_apply(abcd, Symmetry.SWAP), Symmetry.TRANSPOSE)
    assert composed == transform_apply(abcd, Symmetry.TRANSPOSE_SWAP)


def test_orbit_size(abcd):
    """Test the orbit lists four members, distinct for generic rates."""
    members = orbit(abcd)
    assert [g for g, _ in members] == list(Symmetry)
    assert len({rate_tuple(m) for _, m in members}) == 4

    symmetric = MatrixModel.of(exp(1), exp(2), exp(2), exp(1))
    assert len({rate_tuple(m) for _, m in orbit(symmetric)}) == 1


def test_model_file_schema():
    """Test the JSON model file layout."""
    text = """{"entries": {"a11": {"dist": "exponential", "rate": 1.0},
                           "a12": {"dist": "constant", "value": 0.5},
                           "a21": {"dist": "constant", "value": 0.0},
                           "a22": {"dist": "uniform", "lo": 0, "hi": 1}}}"""
    model = ModelFile.model_validate_json(text).entries
    assert model.a11 == Exponential(rate=1.0)
    assert model.a12 == Constant(value=0.5)
    assert model.entry_means() == (1.0, 0.5, 0.0, 0.5)


def test_model_file_missing_entry():
    """Test a missing entry is reported by name."""
    with pytest.raises(ValidationError) as exc:
        ModelFile.model_validate_json('{"entries": {"a11": {"dist": "constant", "value": 1}}}')
    locations = {".".join(map(str, err["loc"])) for err in exc.value.errors()}
    assert "entries.a22" in locations


def test_describe():
    """Test the short description."""
    text = MatrixModel.of(exp(2), const(0), const(0), const(1.5)).describe()
    assert text.startswith("[[exponential(rate=2.0)")
    assert "constant(value=1.5)" in text
