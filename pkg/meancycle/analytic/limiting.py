"""Limiting distributions of the increment X(k) = x(k) - x(k-1).

Two matrices admit an explicit limit law whose mean is the mean cycle time:
[[Exp mu, 0], [0, c]], through a contracting recurrence on two integral
functionals (a_k, b_k), and [[F, c], [0, 0]], through a one-variable
recursion that sums to a geometric series with ratio G(t) = F(t)F(c-t).
"""

import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from meancycle.analytic.constant_entry import (
    check_ratio,
    lambda_const_diag_one_random,
    lambda_zero_row_general,
    split_points,
)
from meancycle.models.distributions import Distribution, Exponential
from meancycle.numerics.quadrature import integrate
from meancycle.utils.exceptions import UnsupportedParamError
from meancycle.utils.logger import log


@dataclass(frozen=True)
class FixedPointState:
    """Limit of the (a_k, b_k) recurrence and the iterations it took."""

    a: float
    b: float
    iterations: int


@dataclass(frozen=True)
class IncrementDistribution:
    """Limit law Phi(t) = P{X < t} of the increment.

    Beyond ``split`` the law coincides with ``tail``; on (0, split] it is
    ``cdf``. ``atom`` is (location, probability) when X has a point mass.
    """

    cdf: Callable[[float], float]
    mean: float
    split: float
    tail: Distribution
    atom: Optional[Tuple[float, float]] = None
    points: Sequence[float] = field(default_factory=tuple)

    def expected_value(self, tol: float = 1e-12) -> float:
        """E[X] as the integral of 1 - Phi, using the tail law beyond ``split``."""
        correction = integrate(
            lambda t: float(self.tail.cdf(t)) - self.cdf(t), 0.0, self.split, tol=tol, points=self.points
        )
        return self.tail.mean() + correction.value


def _contraction(mu: float, c: float) -> Tuple[float, float]:
    if not mu > 0:
        raise UnsupportedParamError(f"mu must be a positive rate, got {mu}")
    if not c >= 0:
        raise UnsupportedParamError(f"c must be a nonnegative constant, got {c}")
    big_c = math.exp(-mu * c)
    return mu * c * big_c, big_c


def fixed_point_closed_form(mu: float, c: float) -> Tuple[float, float]:
    """(a, b) solving the fixed-point equations directly."""
    s, big_c = _contraction(mu, c)
    d = 2.0 - 4.0 * s + s * s
    return 2.0 * s * big_c / d, (2.0 - s) * s * big_c / d


def fixed_point_ab(mu: float, c: float, tol: float = 1e-14, max_iterations: int = 10_000) -> FixedPointState:
    """Iterate the (a_k, b_k) recurrence from (0, 0) until the step is below ``tol``.

    The iteration matrix has eigenvalues mu c e^{-mu c} (1 +/- sqrt(2)/2),
    both below e^{-1}(1 + sqrt(2)/2) < 0.63 in absolute value.
    """
    s, big_c = _contraction(mu, c)
    offset = s * big_c
    a = b = 0.0
    for k in range(1, max_iterations + 1):
        a_next = s * a + s * b + offset
        b_next = 0.5 * s * a + s * b + offset
        step = max(abs(a_next - a), abs(b_next - b))
        a, b = a_next, b_next
        if step < tol:
            log.debug(f"fixed_point_ab(mu={mu}, c={c}) converged in {k} iterations")
            return FixedPointState(a, b, k)
    raise UnsupportedParamError(f"fixed_point_ab did not converge in {max_iterations} iterations")


def _psi(a: float, b: float, mu: float, c: float) -> Callable[[float], float]:
    """Distribution function of Y(k) = y(k) - x(k) given its functionals (a, b)."""
    big_c = math.exp(-mu * c)

    def psi(t: float) -> float:
        if t > c:
            return 1.0
        if t <= 0.0:
            return big_c * (a + b + big_c) * math.exp(mu * t)
        return big_c * ((c - t) * a / c + b + big_c) * math.exp(mu * t)
    return psi


def const_diag_cdf_iterates(mu: float, c: float, k: int) -> List[Callable[[float], float]]:
    """Phi_1, ..., Phi_k for [[Exp mu, 0], [0, c]] started from z(0) = (0, 0).

    Phi_j = F_alpha * Psi_{j-1}; Psi_0 is the unit step at 0 and Psi_1 onwards
    follow from the (a, b) recurrence started at (0, 1 - e^{-mu c}).
    """
    s, big_c = _contraction(mu, c)
    law = Exponential(rate=mu)

    def step_at_zero(t: float) -> float:
        return 1.0 if t > 0.0 else 0.0

    psis: List[Callable[[float], float]] = [step_at_zero]
    a, b = 0.0, 1.0 - big_c
    for _ in range(1, k):
        psis.append(_psi(a, b, mu, c))
        a, b = s * a + s * b + s * big_c, 0.5 * s * a + s * b + s * big_c

    def make_phi(psi):
        return lambda t: float(law.cdf(t)) * psi(t)
    return [make_phi(psi) for psi in psis[:k]]


def atom_probability_const_diag(mu: float, c: float) -> float:
    """P{X = c} as printed: 1 - C(4 - 6s + s^2 - 2C + 2sC) / (2 - 4s + s^2), s = mu c C."""
    s, big_c = _contraction(mu, c)
    return 1.0 - big_c * (4.0 - 6.0 * s + s * s - 2.0 * big_c + 2.0 * s * big_c) / (2.0 - 4.0 * s + s * s)


def increment_distribution_const_diag(mu: float, c: float) -> IncrementDistribution:
    """Limit law of X for [[Exp mu, 0], [0, c]]: continuous on (0, c] plus an atom at c."""
    s, big_c = _contraction(mu, c)
    k = 2.0 * big_c * big_c / (2.0 - 4.0 * s + s * s)

    def phi(t: float) -> float:
        if t <= 0.0:
            return 0.0
        if t <= c:
            return k * (mu * big_c * t - 1.0) * (1.0 - math.exp(mu * t))
        return -math.expm1(-mu * t)

    p = atom_probability_const_diag(mu, c)
    return IncrementDistribution(
        cdf=phi,
        mean=lambda_const_diag_one_random(mu, c).value,
        split=c,
        tail=Exponential(rate=mu),
        atom=(c, p),
    )


def increment_distribution_zero_row(F: Distribution, c: float) -> IncrementDistribution:
    """Limit law of X for [[F, c], [0, 0]]."""
    check_ratio(F, c)

    def phi(t: float) -> float:
        if t <= 0.0:
            return 0.0
        ft = float(F.cdf(t))
        if t > c:
            return ft
        fc = float(F.cdf(c - t))
        return ft * (1.0 - fc) / (1.0 - ft * fc)

    # an atom of F at 0 leaves an atom of X at c
    jump = float(F.cdf(math.nextafter(c, math.inf))) - phi(c) if c > 0 else 0.0
    return IncrementDistribution(
        cdf=phi,
        mean=lambda_zero_row_general(F, c).value,
        split=c,
        tail=F,
        atom=(c, jump) if jump > 1e-15 else None,
        points=tuple(split_points(F, c)),
    )


def zero_row_cdf_iterates(F: Distribution, c: float, n_grid: int, iterations: int) -> Tuple[np.ndarray, np.ndarray]:
    """Phi_0, ..., Phi_k of [[F, c], [0, 0]] on the grid t_i = c i / n, 0 < i < n.

    The grid is symmetric under t -> c - t, so each step reads the previous
    iterate in reverse order. Phi_0 is the unit step at 0, i.e. 1 on the grid.

    Returns:
        (grid, iterates) with iterates of shape (iterations + 1, n_grid - 1).
    """
    if c <= 0 or n_grid < 2:
        raise UnsupportedParamError("zero_row_cdf_iterates needs c > 0 and at least two grid cells")
    grid = c * np.arange(1, n_grid) / n_grid
    f = np.asarray(F.cdf(grid), dtype=float)
    iterates = np.empty((iterations + 1, grid.size))
    iterates[0] = 1.0
    for k in range(1, iterations + 1):
        iterates[k] = f * (1.0 - iterates[k - 1][::-1])
    return grid, iterates
