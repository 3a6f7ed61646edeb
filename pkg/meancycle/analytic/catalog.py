"""Closed-form mean cycle times for i.i.d. and zero-entry exponential matrices.

Polynomial ratios are evaluated in homogeneous Horner form. When every
argument is an int, a Fraction, or a float with a small exact binary
denominator, the ratio is also evaluated in rational arithmetic and
returned as ``Rate.exact``.
"""

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from meancycle.config import settings
from meancycle.models.cases import CaseFamily
from meancycle.utils.exceptions import UnsupportedParamError
from meancycle.utils.logger import log

Scalar = Union[int, float, Fraction]


@dataclass(frozen=True)
class Rate:
    """A mean cycle time (time per cycle).

    ``precision`` is nonzero only for constants known to a few printed
    decimals, and then bounds their rounding error.
    """

    value: float
    exact: Optional[Fraction] = None
    precision: float = 0.0

    @property
    def low_precision(self) -> bool:
        return self.precision > 0.0


class IidFamily(str, enum.Enum):
    """Entry laws for which an i.i.d. closed form is catalogued."""
    EXPONENTIAL = "exponential"
    UNIFORM01 = "uniform01"
    BERNOULLI = "bernoulli"
    GEOMETRIC = "geometric"
    DISCRETE_UNIFORM = "discrete_uniform"


class ZeroPattern(str, enum.Enum):
    """Placement of the two zero entries of an otherwise exponential matrix."""
    ZERO_OFFDIAG = "ZeroOffdiag"
    ZERO_DIAG = "ZeroDiag"
    ZERO_ROW = "ZeroRow"
    ZERO_COLUMN = "ZeroColumn"


# Printed constants: value, rounding bound
UNIFORM01_LAMBDA = (0.719, 5e-4)
DISCRETE_UNIFORM_M2_PER_UNIT = (0.803, 5e-4)


def _as_exact(x: Scalar) -> Optional[Fraction]:
    if isinstance(x, bool):
        return None
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    fx = Fraction(x)
    return fx if fx.denominator <= settings.exact_denominator_limit else None


def _exact_args(*xs: Scalar) -> Optional[Tuple[Fraction, ...]]:
    exact = tuple(_as_exact(x) for x in xs)
    return None if any(e is None for e in exact) else exact


def _homogeneous(coeffs: Sequence[int], x, y):
    """Evaluate sum_i coeffs[i] * x^(d-i) * y^i by Horner's rule in y/x."""
    ratio = y / x
    acc = 0
    for c in reversed(coeffs):
        acc = acc * ratio + c
    return acc * x ** (len(coeffs) - 1)


def _polynomial(coeffs: Sequence[int], p):
    """Evaluate sum_i coeffs[i] * p^i."""
    acc = 0
    for c in reversed(coeffs):
        acc = acc * p + c
    return acc


def _rate_from(formula, *args: Scalar) -> Rate:
    exact = _exact_args(*args)
    if exact is not None:
        q = Fraction(formula(*exact))
        return Rate(float(q), q)
    return Rate(float(formula(*(float(a) for a in args))))


def _require_positive(**rates: Scalar) -> None:
    for name, value in rates.items():
        if not value > 0:
            raise UnsupportedParamError(f"{name} must be a positive rate, got {value}")


# i.i.d. families

def _bernoulli(p):
    return 1 - (1 + 2 * p) * (1 - p) ** 4 / (1 + 2 * p * (1 - p) * (1 - 3 * p + p * p))


_GEOMETRIC_N = (0, 4, 18, 50, 99, 175, 244, 289, 273, 218, 137, 77, 32, 11, 1)
_GEOMETRIC_D_TAIL = (1, 6, 8, 20, 25, 32, 25, 20, 8, 6, 1)


def _geometric(p):
    numerator = _polynomial(_GEOMETRIC_N, p)
    denominator = (1 - p) * (1 + p) * (1 + p + p * p) * _polynomial(_GEOMETRIC_D_TAIL, p)
    return numerator / denominator


def lambda_iid(kind: IidFamily, param: Optional[Scalar] = None) -> Rate:
    """Mean cycle time when all four entries share one law.

    Args:
        kind: Entry law family.
        param: Rate for exponential, p for Bernoulli and geometric, m for
            discrete uniform; unused for uniform on [0, 1].

    Raises:
        UnsupportedParamError: If the parameter is outside the family's domain.
    """
    kind = IidFamily(kind)
    if kind is IidFamily.EXPONENTIAL:
        _require_positive(mu=param)
        return _rate_from(lambda mu: 407 / (228 * mu), param)

    if kind is IidFamily.UNIFORM01:
        value, bound = UNIFORM01_LAMBDA
        log.warning("Uniform[0,1] constant is known to three decimals only")
        return Rate(value, precision=bound)

    if kind is IidFamily.BERNOULLI:
        if param is None or not 0 <= param <= 1:
            raise UnsupportedParamError(f"Bernoulli p must lie in [0, 1], got {param}")
        return _rate_from(_bernoulli, param)

    if kind is IidFamily.GEOMETRIC:
        if param is None or not 0 <= param < 1:
            raise UnsupportedParamError(f"geometric p must lie in [0, 1), got {param}")
        return _rate_from(_geometric, param)

    # Discrete uniform on {0, ..., m}
    if param is None or param < 0 or int(param) != param:
        raise UnsupportedParamError(f"discrete uniform m must be a nonnegative integer, got {param}")
    m = int(param)
    if m == 1:
        return Rate(6 / 7, Fraction(6, 7))
    if m == 2:
        per_unit, bound = DISCRETE_UNIFORM_M2_PER_UNIT
        log.warning("Discrete uniform m=2 constant is known to three decimals only")
        return Rate(m * per_unit, precision=m * bound)

    from meancycle.models.distributions import DiscreteUniform
    from meancycle.models.matrix import MatrixModel
    from meancycle.solvers.chain import lambda_discrete

    law = DiscreteUniform(m=m)
    return lambda_discrete(MatrixModel.of(law, law, law, law))


# Diagonal / off-diagonal exponential

_PQ_P = (160, 1776, 8220, 21378, 35595, 41566, 35595, 21378, 8220, 1776, 160)
_PQ_Q = (8, 80, 321, 690, 880, 690, 321, 80, 8)


def _diag_offdiag(mu, nu):
    return _homogeneous(_PQ_P, mu, nu) / (16 * mu * nu * (mu + nu) * _homogeneous(_PQ_Q, mu, nu))


def lambda_diag_offdiag_exp(mu: Scalar, nu: Scalar) -> Rate:
    """[[Exp mu, Exp nu], [Exp nu, Exp mu]]: the degree-10 ratio P/Q."""
    _require_positive(mu=mu, nu=nu)
    return _rate_from(_diag_offdiag, mu, nu)


# Two zero entries

def _zero_offdiag(mu, tau):
    return _homogeneous((1, 1, 1, 1, 1), mu, tau) / (mu * tau * (mu + tau) * (mu * mu + tau * tau))


def _zero_diag(nu, sigma):
    return _homogeneous((4, 7, 4), nu, sigma) / (6 * nu * sigma * (nu + sigma))


def _zero_row(mu, nu):
    return _homogeneous((2, 7, 10, 11, 4), mu, nu) / (mu * nu * (mu + nu) ** 2 * (3 * mu + 4 * nu))


_ZERO_PATTERNS = {
    ZeroPattern.ZERO_OFFDIAG: _zero_offdiag,
    ZeroPattern.ZERO_DIAG: _zero_diag,
    ZeroPattern.ZERO_ROW: _zero_row,
    ZeroPattern.ZERO_COLUMN: _zero_row,  # the transpose of a zero row
}


def lambda_zero_pattern_exp(pattern: ZeroPattern, p1: Scalar, p2: Scalar) -> Rate:
    """Exponential matrix with two zero entries.

    Argument order per pattern: ZeroOffdiag (mu, tau), ZeroDiag (nu, sigma),
    ZeroRow (mu, nu), ZeroColumn (mu, sigma).
    """
    _require_positive(p1=p1, p2=p2)
    return _rate_from(_ZERO_PATTERNS[ZeroPattern(pattern)], p1, p2)


# One zero entry, special parameter coincidences

def _one_zero_diag_sigma_eq_mu(mu, nu):
    num = _homogeneous((48, 238, 495, 581, 326, 68), mu, nu)
    return num / (2 * mu * nu * _homogeneous((36, 147, 215, 130, 28), mu, nu))


def _one_zero_diag_sigma_eq_nu(mu, nu):
    num = _homogeneous((15, 152, 624, 1382, 1838, 1592, 973, 384, 64), mu, nu)
    den = mu * nu * (mu + nu) ** 2 * _homogeneous((12, 97, 286, 397, 256, 64), mu, nu)
    return num / den


def _one_zero_offdiag_nu_eq_mu(mu, tau):
    num = _homogeneous((288, 1048, 1936, 2688, 3012, 2226, 941, 204, 17), mu, tau)
    return num / (2 * mu * tau * _homogeneous((144, 524, 968, 1200, 910, 387, 84, 7), mu, tau))


def _one_zero_offdiag_tau_eq_mu(mu, nu):
    num = _homogeneous((256, 2112, 8044, 19355, 32167, 36887, 28709, 14854, 4912, 944, 80), mu, nu)
    den = 2 * mu * nu * (mu + nu) * _homogeneous((192, 1344, 4047, 6770, 6799, 4216, 1600, 344, 32), mu, nu)
    return num / den


_ONE_ZERO_CASES = {
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_MU: _one_zero_diag_sigma_eq_mu,
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_NU: _one_zero_diag_sigma_eq_nu,
    CaseFamily.ONE_ZERO_OFFDIAG_NU_EQ_MU: _one_zero_offdiag_nu_eq_mu,
    CaseFamily.ONE_ZERO_OFFDIAG_TAU_EQ_MU: _one_zero_offdiag_tau_eq_mu,
}


def lambda_one_zero_entry_exp(case: CaseFamily, mu: Scalar, other: Scalar) -> Rate:
    """Exponential matrix with one zero entry and two equal rates.

    [[mu, nu], [sigma, 0]] with sigma = mu or sigma = nu takes other = nu;
    [[mu, nu], [0, tau]] with nu = mu takes other = tau, with tau = mu
    takes other = nu.
    """
    case = CaseFamily(case)
    if case not in _ONE_ZERO_CASES:
        raise UnsupportedParamError(f"{case.value} is not a one-zero-entry family")
    _require_positive(mu=mu, other=other)
    return _rate_from(_ONE_ZERO_CASES[case], mu, other)
