"""Matrix models and the symmetry group that leaves the mean cycle time unchanged."""

import enum
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict

from meancycle.models.distributions import Distribution


class MatrixModel(BaseModel):
    """Laws of the entries of A(k) = [[a11, a12], [a21, a22]].

    Entries are mutually independent and i.i.d. over k.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    a11: Distribution
    a12: Distribution
    a21: Distribution
    a22: Distribution

    @classmethod
    def of(cls, a11, a12, a21, a22) -> "MatrixModel":
        return cls(a11=a11, a12=a12, a21=a21, a22=a22)

    @property
    def entries(self) -> Tuple[Distribution, Distribution, Distribution, Distribution]:
        return (self.a11, self.a12, self.a21, self.a22)

    def entry_means(self) -> Tuple[float, float, float, float]:
        return tuple(e.mean() for e in self.entries)

    def describe(self) -> str:
        def short(d) -> str:
            fields = ", ".join(f"{k}={v}" for k, v in d.model_dump(exclude={"dist"}).items())
            return f"{d.dist}({fields})"
        return f"[[{short(self.a11)}, {short(self.a12)}], [{short(self.a21)}, {short(self.a22)}]]"


class Symmetry(str, enum.Enum):
    """Elements of the four-element invariance group."""
    IDENTITY = "identity"
    TRANSPOSE = "transpose"
    SWAP = "swap"
    TRANSPOSE_SWAP = "transpose_swap"


def transform_apply(m: MatrixModel, g: Symmetry) -> MatrixModel:
    """Apply a symmetry element.

    transpose: [[a, b], [c, d]] -> [[a, c], [b, d]]
    swap (simultaneous row and column permutation): -> [[d, c], [b, a]]
    transpose after swap: -> [[d, b], [c, a]]
    """
    a, b, c, d = m.entries
    if g is Symmetry.IDENTITY:
        return m
    if g is Symmetry.TRANSPOSE:
        return MatrixModel.of(a, c, b, d)
    if g is Symmetry.SWAP:
        return MatrixModel.of(d, c, b, a)
    if g is Symmetry.TRANSPOSE_SWAP:
        return MatrixModel.of(d, b, c, a)
    raise ValueError(f"Unknown symmetry element: {g}")


def orbit(m: MatrixModel) -> List[Tuple[Symmetry, MatrixModel]]:
    """All group images of ``m`` in group order, duplicates included."""
    return [(g, transform_apply(m, g)) for g in Symmetry]


def rate_tuple(m: MatrixModel) -> Tuple[float, float, float, float]:
    """Exponential rates (mu, nu, sigma, tau) of an all-exponential model."""
    return tuple(e.rate for e in m.entries)
