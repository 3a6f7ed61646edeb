"""Entry laws of the state transition matrix.

Every law exposes sampling, the left-continuous distribution function
P{X < t} and the exact mean. Discrete laws additionally expose their atoms
for the difference chain.
"""

import math
from typing import Annotated, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, model_validator

from meancycle.utils.exceptions import UnsupportedParamError

ArrayLike = Union[float, np.ndarray]


def _shape_like(t, out: np.ndarray) -> ArrayLike:
    return float(out) if np.ndim(t) == 0 else out


class _EntryLaw(BaseModel):
    """Common behaviour of all entry laws."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True, allow_inf_nan=False)

    @property
    def is_random(self) -> bool:
        return True

    @property
    def is_discrete(self) -> bool:
        """True when the law has (possibly truncated) finite lattice support."""
        return False

    def sample(self, rng: np.random.Generator, size: Optional[int] = None) -> ArrayLike:
        raise NotImplementedError

    def cdf(self, t: ArrayLike) -> ArrayLike:
        raise NotImplementedError

    def mean(self) -> float:
        raise NotImplementedError

    def jump_points(self) -> Tuple[float, ...]:
        """Points where the distribution function has a jump or a kink."""
        return ()

    def atoms(self, truncation: float = 1e-12) -> Tuple[np.ndarray, np.ndarray]:
        raise UnsupportedParamError(f"{type(self).__name__} has no finite support")


class Constant(_EntryLaw):
    """Point mass at a nonnegative constant."""

    dist: Literal["constant"] = "constant"
    value: float = Field(ge=0)

    @property
    def is_random(self) -> bool:
        return False

    @property
    def is_discrete(self) -> bool:
        return True

    def sample(self, rng, size=None):
        return self.value if size is None else np.full(size, self.value)

    def cdf(self, t):
        return _shape_like(t, np.where(np.asarray(t, dtype=float) > self.value, 1.0, 0.0))

    def mean(self) -> float:
        return self.value

    def jump_points(self):
        return (self.value,)

    def atoms(self, truncation=1e-12):
        return np.array([self.value]), np.array([1.0])


class Exponential(_EntryLaw):
    """Exponential law with the given rate."""

    dist: Literal["exponential"] = "exponential"
    rate: float = Field(gt=0)

    def from_uniform(self, u: ArrayLike) -> ArrayLike:
        """Inverse-CDF transform of U in (0, 1]."""
        return -np.log(u) / self.rate

    def sample(self, rng, size=None):
        u = 1.0 - rng.random(size)
        out = self.from_uniform(u)
        return float(out) if size is None else out

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        return _shape_like(t, np.where(t > 0, -np.expm1(-self.rate * np.maximum(t, 0.0)), 0.0))

    def mean(self) -> float:
        return 1.0 / self.rate

    def jump_points(self):
        return (0.0,)


class UniformContinuous(_EntryLaw):
    """Continuous uniform law on [lo, hi]."""

    dist: Literal["uniform"] = "uniform"
    lo: float = Field(ge=0)
    hi: float

    @model_validator(mode="after")
    def _check_range(self):
        if not self.lo < self.hi:
            raise ValueError(f"uniform requires lo < hi, got lo={self.lo}, hi={self.hi}")
        return self

    def sample(self, rng, size=None):
        return rng.uniform(self.lo, self.hi, size)

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        return _shape_like(t, np.clip((t - self.lo) / (self.hi - self.lo), 0.0, 1.0))

    def mean(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def jump_points(self):
        return (self.lo, self.hi)


class Bernoulli(_EntryLaw):
    """Two-point law on {0, 1} with P{X = 1} = p."""

    dist: Literal["bernoulli"] = "bernoulli"
    p: float = Field(ge=0, le=1)

    @property
    def is_discrete(self) -> bool:
        return True

    def sample(self, rng, size=None):
        out = (rng.random(size) < self.p).astype(float)
        return float(out) if size is None else out

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        return _shape_like(t, np.select([t <= 0, t <= 1], [0.0, 1.0 - self.p], 1.0))

    def mean(self) -> float:
        return self.p

    def jump_points(self):
        return (0.0, 1.0)

    def atoms(self, truncation=1e-12):
        return np.array([0.0, 1.0]), np.array([1.0 - self.p, self.p])


class Geometric(_EntryLaw):
    """Geometric law on {0, 1, 2, ...} with P{X = k} = (1 - p) p^k."""

    dist: Literal["geometric"] = "geometric"
    p: float = Field(ge=0, lt=1)

    @property
    def is_discrete(self) -> bool:
        return True

    def sample(self, rng, size=None):
        out = rng.geometric(1.0 - self.p, size) - 1
        return float(out) if size is None else out.astype(float)

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        k = np.ceil(np.maximum(t, 0.0))
        return _shape_like(t, np.where(t > 0, 1.0 - self.p ** k, 0.0))

    def mean(self) -> float:
        return self.p / (1.0 - self.p)

    def truncation_point(self, truncation: float) -> int:
        """Smallest K with P{X >= K} = p^K <= truncation."""
        if self.p == 0.0:
            return 1
        k = max(1, math.ceil(math.log(truncation) / math.log(self.p)))
        while self.p ** k > truncation:
            k += 1
        return k

    def jump_points(self):
        return tuple(float(k) for k in range(self.truncation_point(1e-12) + 1))

    def atoms(self, truncation=1e-12):
        k_max = self.truncation_point(truncation)
        values = np.arange(k_max + 1, dtype=float)
        probs = (1.0 - self.p) * self.p ** values
        # the whole tail P{X >= K} sits on the last atom
        probs[-1] = self.p ** k_max
        keep = probs > 0
        return values[keep], probs[keep]


class DiscreteUniform(_EntryLaw):
    """Uniform law on the integers {0, ..., m}."""

    dist: Literal["discrete_uniform"] = "discrete_uniform"
    m: int = Field(ge=0)

    @property
    def is_discrete(self) -> bool:
        return True

    def sample(self, rng, size=None):
        out = rng.integers(0, self.m + 1, size)
        return float(out) if size is None else out.astype(float)

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        return _shape_like(t, np.clip(np.ceil(t), 0, self.m + 1) / (self.m + 1))

    def mean(self) -> float:
        return self.m / 2.0

    def jump_points(self):
        return tuple(float(k) for k in range(self.m + 1))

    def atoms(self, truncation=1e-12):
        return np.arange(self.m + 1, dtype=float), np.full(self.m + 1, 1.0 / (self.m + 1))


class TabulatedCdf(_EntryLaw):
    """Piecewise-linear distribution function through (t_i, F_i).

    A positive first value F_0 is an atom at t_0.
    """

    dist: Literal["tabulated_cdf"] = "tabulated_cdf"
    breakpoints: Tuple[float, ...] = Field(alias="t", min_length=2)
    values: Tuple[float, ...] = Field(alias="F", min_length=2)

    @model_validator(mode="after")
    def _check_table(self):
        bp = np.asarray(self.breakpoints)
        fv = np.asarray(self.values)
        if bp.shape != fv.shape:
            raise ValueError("tabulated_cdf needs as many values as breakpoints")
        if bp[0] < 0:
            raise ValueError("tabulated_cdf breakpoints must be nonnegative")
        if np.any(np.diff(bp) <= 0):
            raise ValueError("tabulated_cdf breakpoints must be strictly ascending")
        if fv[0] < 0 or np.any(np.diff(fv) < 0):
            raise ValueError("tabulated_cdf values must be nondecreasing from a nonnegative start")
        if fv[-1] != 1.0:
            raise ValueError("tabulated_cdf values must end at 1")
        return self

    def sample(self, rng, size=None):
        out = np.interp(rng.random(size), self.values, self.breakpoints)
        return float(out) if size is None else out

    def cdf(self, t):
        t = np.asarray(t, dtype=float)
        inner = np.interp(t, self.breakpoints, self.values)
        out = np.where(t <= self.breakpoints[0], 0.0, np.where(t > self.breakpoints[-1], 1.0, inner))
        return _shape_like(t, out)

    def mean(self) -> float:
        bp = np.asarray(self.breakpoints)
        fv = np.asarray(self.values)
        return float(bp[0] * fv[0] + np.sum(np.diff(fv) * (bp[:-1] + bp[1:]) / 2.0))

    def jump_points(self):
        return tuple(self.breakpoints)


Distribution = Annotated[
    Union[Constant, Exponential, UniformContinuous, Bernoulli, Geometric, DiscreteUniform, TabulatedCdf],
    Field(discriminator="dist"),
]

DISTRIBUTION_ADAPTER: TypeAdapter = TypeAdapter(Distribution)


def parse_distribution(data: dict) -> Distribution:
    """Validate a JSON-style entry description."""
    return DISTRIBUTION_ADAPTER.validate_python(data)


def sample(d: Distribution, rng: np.random.Generator, size: Optional[int] = None) -> ArrayLike:
    """Draw from ``d`` using the caller's stream."""
    return d.sample(rng, size)


def cdf(d: Distribution, t: ArrayLike) -> ArrayLike:
    """Left-continuous distribution function P{X < t}."""
    return d.cdf(t)


def mean(d: Distribution) -> float:
    """Exact expectation."""
    return d.mean()


def is_zero(d: Distribution) -> bool:
    return isinstance(d, Constant) and d.value == 0.0
