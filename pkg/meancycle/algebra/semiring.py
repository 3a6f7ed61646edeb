"""Max-plus scalar, vector and 2x2 matrix arithmetic.

Semiring addition is max, semiring multiplication is ordinary +. The bottom
element (minus infinity) is a distinct tag, not a float sentinel.
"""

import math
from dataclasses import dataclass
from typing import Optional, Union

from meancycle.utils.exceptions import NonFiniteError

Number = Union[int, float]


@dataclass(frozen=True)
class MaxPlusValue:
    """A finite real or the bottom element (``value is None``)."""

    value: Optional[float]

    def __post_init__(self):
        if self.value is not None and not math.isfinite(self.value):
            raise NonFiniteError(f"Max-plus values must be finite or bottom, got {self.value!r}", at=self.value)

    @classmethod
    def bottom(cls) -> "MaxPlusValue":
        return cls(None)

    @classmethod
    def of(cls, x: Union["MaxPlusValue", Number]) -> "MaxPlusValue":
        if isinstance(x, MaxPlusValue):
            return x
        return cls(float(x))

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __repr__(self) -> str:
        return "MaxPlusValue(⊥)" if self.value is None else f"MaxPlusValue({self.value!r})"


BOTTOM = MaxPlusValue.bottom()
ZERO = MaxPlusValue(0.0)


@dataclass(frozen=True)
class MaxPlusVector2:
    """State vector z = (x, y)."""

    x: MaxPlusValue
    y: MaxPlusValue

    @classmethod
    def of(cls, x: Union[MaxPlusValue, Number], y: Union[MaxPlusValue, Number]) -> "MaxPlusVector2":
        return cls(MaxPlusValue.of(x), MaxPlusValue.of(y))


@dataclass(frozen=True)
class MaxPlusMatrix2:
    """Row-major 2x2 matrix [[a11, a12], [a21, a22]]."""

    a11: MaxPlusValue
    a12: MaxPlusValue
    a21: MaxPlusValue
    a22: MaxPlusValue

    @classmethod
    def of(cls, a11, a12, a21, a22) -> "MaxPlusMatrix2":
        return cls(*(MaxPlusValue.of(v) for v in (a11, a12, a21, a22)))

    @classmethod
    def identity(cls) -> "MaxPlusMatrix2":
        return cls(ZERO, BOTTOM, BOTTOM, ZERO)

    def min_finite_entry(self) -> Optional[float]:
        finite = [e.value for e in (self.a11, self.a12, self.a21, self.a22) if e.value is not None]
        return min(finite) if finite else None


def mp_add(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Semiring addition: max, with bottom as the neutral element."""
    if a.value is None:
        return b
    if b.value is None:
        return a
    return a if a.value >= b.value else b


def mp_mul(a: MaxPlusValue, b: MaxPlusValue) -> MaxPlusValue:
    """Semiring multiplication: +, with bottom absorbing."""
    if a.value is None or b.value is None:
        return BOTTOM
    return MaxPlusValue(a.value + b.value)


def mat_vec(A: MaxPlusMatrix2, z: MaxPlusVector2) -> MaxPlusVector2:
    """One step of z(k) = A(k) z(k-1)."""
    return MaxPlusVector2(
        mp_add(mp_mul(A.a11, z.x), mp_mul(A.a12, z.y)),
        mp_add(mp_mul(A.a21, z.x), mp_mul(A.a22, z.y)),
    )


def norm(z: MaxPlusVector2) -> MaxPlusValue:
    """Maximum entry of the vector."""
    return mp_add(z.x, z.y)
