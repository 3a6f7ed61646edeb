"""Exact mean cycle time of a fully exponential 2x2 matrix.

W = [[U1 V11, U1 V12], [U2 V21, U2 V22]] is assembled from 4x3 blocks U and
3x4 blocks V whose entries are rational functions of the rates
(mu, nu, sigma, tau) of (a11, a12, a21, a22). The stationary weights solve
(I - W) omega = 0 with omega_10 + omega_20 = 1, and
lambda = q1 . omega_1 + q2 . omega_2.
"""

import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from meancycle.analytic.catalog import Rate
from meancycle.numerics.linalg import DenseMatrix, residual_norm, solve_with_normalization
from meancycle.utils.exceptions import UnsupportedParamError
from meancycle.utils.logger import log

Entry = Callable[[float, float, float, float], float]


@dataclass(frozen=True)
class RateQuad:
    """Exponential rates of a11, a12, a21, a22."""

    mu: float
    nu: float
    sigma: float
    tau: float

    def __post_init__(self):
        for name in ("mu", "nu", "sigma", "tau"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise UnsupportedParamError(f"{name} must be a positive finite rate, got {value}")

    def astuple(self) -> Tuple[float, float, float, float]:
        return (self.mu, self.nu, self.sigma, self.tau)


@dataclass(frozen=True)
class StationaryWeights:
    """Solution omega = (omega_10..omega_13, omega_20..omega_23) and its residual."""

    omega: np.ndarray
    residual: float

    @property
    def omega1(self) -> np.ndarray:
        return self.omega[:4]

    @property
    def omega2(self) -> np.ndarray:
        return self.omega[4:]


# U blocks, 4x3; arguments (m, n, s, t) = (mu, nu, sigma, tau)
U1: Dict[Tuple[int, int], Entry] = {
    (0, 0): lambda m, n, s, t: 1.0,
    (0, 1): lambda m, n, s, t: 1.0,
    (0, 2): lambda m, n, s, t: 1.0,
    (1, 0): lambda m, n, s, t: m / (m + n),
    (1, 1): lambda m, n, s, t: 0.5,
    (1, 2): lambda m, n, s, t: (m + n) / (m + 2 * n),
    (2, 0): lambda m, n, s, t: m / (m + t),
    (2, 1): lambda m, n, s, t: n / (n + t),
    (2, 2): lambda m, n, s, t: (m + n) / (m + n + t),
    (3, 0): lambda m, n, s, t: m / (m + n + t),
    (3, 1): lambda m, n, s, t: n / (2 * n + t),
    (3, 2): lambda m, n, s, t: (m + n) / (m + 2 * n + t),
}

U2: Dict[Tuple[int, int], Entry] = {
    (0, 0): lambda m, n, s, t: 1.0,
    (0, 1): lambda m, n, s, t: 1.0,
    (0, 2): lambda m, n, s, t: 1.0,
    (1, 0): lambda m, n, s, t: s / (m + s),
    (1, 1): lambda m, n, s, t: t / (m + t),
    (1, 2): lambda m, n, s, t: (s + t) / (m + s + t),
    (2, 0): lambda m, n, s, t: 0.5,
    (2, 1): lambda m, n, s, t: t / (s + t),
    (2, 2): lambda m, n, s, t: (s + t) / (2 * s + t),
    (3, 0): lambda m, n, s, t: s / (m + 2 * s),
    (3, 1): lambda m, n, s, t: t / (m + s + t),
    (3, 2): lambda m, n, s, t: (s + t) / (m + 2 * s + t),
}

# V blocks, 3x4; entries not listed are zero
V11: Dict[Tuple[int, int], Entry] = {
    (0, 0): lambda m, n, s, t: s / (m + s),
    (0, 2): lambda m, n, s, t: -m * s / ((m + t) * (m + s + t)),
    (1, 1): lambda m, n, s, t: s / (n + s),
    (1, 3): lambda m, n, s, t: -n * s / ((n + t) * (n + s + t)),
    (2, 1): lambda m, n, s, t: -s / (m + n + s),
    (2, 3): lambda m, n, s, t: s * (m + n) / ((m + n + t) * (m + n + s + t)),
}

V12: Dict[Tuple[int, int], Entry] = {
    (0, 1): lambda m, n, s, t: t / (m + t),
    (0, 3): lambda m, n, s, t: -m * t / ((m + s) * (m + s + t)),
    (1, 0): lambda m, n, s, t: t / (n + t),
    (1, 2): lambda m, n, s, t: -n * t / ((n + s) * (n + s + t)),
    (2, 1): lambda m, n, s, t: -t / (m + n + t),
    (2, 3): lambda m, n, s, t: t * (m + n) / ((m + n + s) * (m + n + s + t)),
}

V21: Dict[Tuple[int, int], Entry] = {
    (0, 0): lambda m, n, s, t: m / (m + s),
    (0, 1): lambda m, n, s, t: -m * s / ((n + s) * (m + n + s)),
    (1, 2): lambda m, n, s, t: m / (m + t),
    (1, 3): lambda m, n, s, t: -m * t / ((n + t) * (m + n + t)),
    (2, 2): lambda m, n, s, t: -m / (m + s + t),
    (2, 3): lambda m, n, s, t: m * (s + t) / ((n + s + t) * (m + n + s + t)),
}

V22: Dict[Tuple[int, int], Entry] = {
    (0, 2): lambda m, n, s, t: n / (n + s),
    (0, 3): lambda m, n, s, t: -n * s / ((m + s) * (m + n + s)),
    (1, 0): lambda m, n, s, t: n / (n + t),
    (1, 1): lambda m, n, s, t: -n * t / ((m + t) * (m + n + t)),
    (2, 2): lambda m, n, s, t: -n / (n + s + t),
    (2, 3): lambda m, n, s, t: n * (s + t) / ((m + s + t) * (m + n + s + t)),
}

# q vectors; the fourth components are negative
Q1: Tuple[Entry, ...] = (
    lambda m, n, s, t: (m * m + m * s + s * s) / (m * s * (m + s)),
    lambda m, n, s, t: m * s * (m + 2 * n + s) / (n * (m + n) * (n + s) * (m + n + s)),
    lambda m, n, s, t: m * s * (m + s + 2 * t) / (t * (m + t) * (s + t) * (m + s + t)),
    lambda m, n, s, t: -m * s * (m + 2 * n + 2 * t + s) / ((n + t) * (m + n + t) * (n + s + t) * (m + n + s + t)),
)

Q2: Tuple[Entry, ...] = (
    lambda m, n, s, t: (n * n + n * t + t * t) / (n * t * (n + t)),
    lambda m, n, s, t: n * t * (2 * m + n + t) / (m * (m + n) * (m + t) * (m + n + t)),
    lambda m, n, s, t: n * t * (n + 2 * s + t) / (s * (n + s) * (s + t) * (n + s + t)),
    lambda m, n, s, t: -n * t * (2 * m + n + 2 * s + t) / ((m + s) * (m + n + s) * (m + s + t) * (m + n + s + t)),
)


def _block(entries: Dict[Tuple[int, int], Entry], shape: Tuple[int, int], r: RateQuad) -> np.ndarray:
    out = np.zeros(shape)
    args = r.astuple()
    for (i, j), entry in entries.items():
        out[i, j] = entry(*args)
    return out


def u_blocks(r: RateQuad) -> Tuple[np.ndarray, np.ndarray]:
    return _block(U1, (4, 3), r), _block(U2, (4, 3), r)


def v_blocks(r: RateQuad) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    return tuple(_block(v, (3, 4), r) for v in (V11, V12, V21, V22))


def q_vectors(r: RateQuad) -> Tuple[np.ndarray, np.ndarray]:
    args = r.astuple()
    return np.array([q(*args) for q in Q1]), np.array([q(*args) for q in Q2])


def build_w(r: RateQuad) -> DenseMatrix:
    """Assemble the 8x8 matrix W."""
    u1, u2 = u_blocks(r)
    v11, v12, v21, v22 = v_blocks(r)
    return np.block([[u1 @ v11, u1 @ v12], [u2 @ v21, u2 @ v22]])


NORMALIZATION_ROW = np.array([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])


def solve_omega(W: DenseMatrix) -> StationaryWeights:
    """Solve (I - W) omega = 0, omega_10 + omega_20 = 1.

    The first equation of (I - W) is replaced by the normalization.

    Raises:
        SingularMatrixError: If the constrained system is singular.
    """
    system = np.eye(8) - W
    omega = solve_with_normalization(system, NORMALIZATION_ROW, row=0)
    residual = residual_norm(system, omega, np.zeros(8))
    if residual > 1e-9:
        log.warning(f"Stationary weights residual {residual:.3e} exceeds 1e-9")
    return StationaryWeights(omega, residual)


def lambda_pure_random(r: RateQuad) -> Rate:
    """Mean cycle time of [[Exp mu, Exp nu], [Exp sigma, Exp tau]]."""
    weights = solve_omega(build_w(r))
    q1, q2 = q_vectors(r)
    value = float(q1 @ weights.omega1 + q2 @ weights.omega2)
    log.debug(f"Spectral lambda for {r.astuple()}: {value} (residual {weights.residual:.2e})")
    return Rate(value)
