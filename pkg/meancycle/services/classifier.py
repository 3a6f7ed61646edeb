"""Classification of matrix models onto closed-form families.

The symmetry orbit of the model is searched family by family in a fixed
priority order, most specific first. Parameter matches use exact equality:
parameters are declared by the user, not measured.
"""

from typing import Callable, Dict, List, Optional, Tuple

from meancycle.models.cases import AnalyticCase, CaseFamily
from meancycle.models.distributions import (
    Bernoulli,
    Constant,
    DiscreteUniform,
    Distribution,
    Exponential,
    Geometric,
    UniformContinuous,
    is_zero,
)
from meancycle.models.matrix import MatrixModel, Symmetry, orbit
from meancycle.utils.logger import log

Match = Optional[Tuple[Dict[str, float], Optional[Distribution]]]


def _rate(d: Distribution) -> Optional[float]:
    return d.rate if isinstance(d, Exponential) else None


def _const(d: Distribution) -> Optional[float]:
    return d.value if isinstance(d, Constant) else None


def _all_equal(m: MatrixModel) -> bool:
    return m.a11 == m.a12 == m.a21 == m.a22


# Matchers receive one orbit member and return its parameters on success.

def _iid_exponential(m: MatrixModel) -> Match:
    if _all_equal(m) and isinstance(m.a11, Exponential):
        return {"mu": m.a11.rate}, None
    return None


def _iid_uniform01(m: MatrixModel) -> Match:
    if _all_equal(m) and m.a11 == UniformContinuous(lo=0.0, hi=1.0):
        return {}, None
    return None


def _iid_bernoulli(m: MatrixModel) -> Match:
    if _all_equal(m) and isinstance(m.a11, Bernoulli):
        return {"p": m.a11.p}, None
    return None


def _iid_geometric(m: MatrixModel) -> Match:
    if _all_equal(m) and isinstance(m.a11, Geometric):
        return {"p": m.a11.p}, None
    return None


def _iid_discrete_uniform(m: MatrixModel) -> Match:
    if _all_equal(m) and isinstance(m.a11, DiscreteUniform):
        return {"m": float(m.a11.m)}, None
    return None


def _diag_offdiag_exponential(m: MatrixModel) -> Match:
    mu, nu, sigma, tau = (_rate(e) for e in m.entries)
    if None not in (mu, nu, sigma, tau) and mu == tau and nu == sigma:
        return {"mu": mu, "nu": nu}, None
    return None


def _pure_exponential(m: MatrixModel) -> Match:
    rates = [_rate(e) for e in m.entries]
    if None not in rates:
        return dict(zip(("mu", "nu", "sigma", "tau"), rates)), None
    return None


def _three_const_symmetric(m: MatrixModel) -> Match:
    mu, c = _rate(m.a11), _const(m.a12)
    if mu is not None and c is not None and m.a21 == m.a12 and m.a22 == m.a12:
        return {"mu": mu, "c": c}, None
    return None


def _const_diag_one_random(m: MatrixModel) -> Match:
    mu, c = _rate(m.a11), _const(m.a22)
    if mu is not None and c is not None and is_zero(m.a12) and is_zero(m.a21):
        return {"mu": mu, "c": c}, None
    return None


def _zero_row_const_diag(m: MatrixModel) -> Match:
    c, nu = _const(m.a11), _rate(m.a12)
    if c is not None and nu is not None and is_zero(m.a21) and is_zero(m.a22):
        return {"nu": nu, "c": c}, None
    return None


def _zero_row_general(m: MatrixModel) -> Match:
    c = _const(m.a12)
    if m.a11.is_random and c is not None and is_zero(m.a21) and is_zero(m.a22):
        return {"c": c}, m.a11
    return None


def _zero_offdiag(m: MatrixModel) -> Match:
    mu, tau = _rate(m.a11), _rate(m.a22)
    if mu is not None and tau is not None and is_zero(m.a12) and is_zero(m.a21):
        return {"mu": mu, "tau": tau}, None
    return None


def _zero_diag(m: MatrixModel) -> Match:
    nu, sigma = _rate(m.a12), _rate(m.a21)
    if nu is not None and sigma is not None and is_zero(m.a11) and is_zero(m.a22):
        return {"nu": nu, "sigma": sigma}, None
    return None


def _zero_row(m: MatrixModel) -> Match:
    mu, nu = _rate(m.a11), _rate(m.a12)
    if mu is not None and nu is not None and is_zero(m.a21) and is_zero(m.a22):
        return {"mu": mu, "nu": nu}, None
    return None


def _one_zero_diag(m: MatrixModel) -> Optional[Tuple[float, float, float]]:
    mu, nu, sigma = _rate(m.a11), _rate(m.a12), _rate(m.a21)
    if None in (mu, nu, sigma) or not is_zero(m.a22):
        return None
    return mu, nu, sigma


def _one_zero_diag_sigma_eq_mu(m: MatrixModel) -> Match:
    rates = _one_zero_diag(m)
    if rates and rates[2] == rates[0]:
        return {"mu": rates[0], "nu": rates[1]}, None
    return None


def _one_zero_diag_sigma_eq_nu(m: MatrixModel) -> Match:
    rates = _one_zero_diag(m)
    if rates and rates[2] == rates[1]:
        return {"mu": rates[0], "nu": rates[1]}, None
    return None


def _one_zero_offdiag(m: MatrixModel) -> Optional[Tuple[float, float, float]]:
    mu, nu, tau = _rate(m.a11), _rate(m.a12), _rate(m.a22)
    if None in (mu, nu, tau) or not is_zero(m.a21):
        return None
    return mu, nu, tau


def _one_zero_offdiag_nu_eq_mu(m: MatrixModel) -> Match:
    rates = _one_zero_offdiag(m)
    if rates and rates[1] == rates[0]:
        return {"mu": rates[0], "tau": rates[2]}, None
    return None


def _one_zero_offdiag_tau_eq_mu(m: MatrixModel) -> Match:
    rates = _one_zero_offdiag(m)
    if rates and rates[2] == rates[0]:
        return {"mu": rates[0], "nu": rates[1]}, None
    return None


def _discrete_finite_support(m: MatrixModel) -> Match:
    if all(e.is_discrete for e in m.entries):
        return {}, None
    return None


PRIORITY: List[Tuple[CaseFamily, Callable[[MatrixModel], Match]]] = [
    (CaseFamily.IID_EXPONENTIAL, _iid_exponential),
    (CaseFamily.IID_UNIFORM01, _iid_uniform01),
    (CaseFamily.IID_BERNOULLI, _iid_bernoulli),
    (CaseFamily.IID_GEOMETRIC, _iid_geometric),
    (CaseFamily.IID_DISCRETE_UNIFORM, _iid_discrete_uniform),
    (CaseFamily.DIAG_OFFDIAG_EXPONENTIAL, _diag_offdiag_exponential),
    (CaseFamily.PURE_EXPONENTIAL, _pure_exponential),
    (CaseFamily.THREE_CONST_SYMMETRIC, _three_const_symmetric),
    (CaseFamily.CONST_DIAG_ONE_RANDOM, _const_diag_one_random),
    (CaseFamily.ZERO_ROW_CONST_DIAG, _zero_row_const_diag),
    (CaseFamily.ZERO_ROW_GENERAL, _zero_row_general),
    (CaseFamily.ZERO_OFFDIAG, _zero_offdiag),
    (CaseFamily.ZERO_DIAG, _zero_diag),
    (CaseFamily.ZERO_ROW, _zero_row),
    (CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_MU, _one_zero_diag_sigma_eq_mu),
    (CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_NU, _one_zero_diag_sigma_eq_nu),
    (CaseFamily.ONE_ZERO_OFFDIAG_NU_EQ_MU, _one_zero_offdiag_nu_eq_mu),
    (CaseFamily.ONE_ZERO_OFFDIAG_TAU_EQ_MU, _one_zero_offdiag_tau_eq_mu),
    (CaseFamily.DISCRETE_FINITE_SUPPORT, _discrete_finite_support),
]


def classify(m: MatrixModel) -> AnalyticCase:
    """Match the symmetry orbit of ``m`` against every family in priority order."""
    members = orbit(m)
    for family, matcher in PRIORITY:
        for transform, member in members:
            found = matcher(member)
            if found is not None:
                params, law = found
                case = AnalyticCase(family=family, params=params, law=law, transform=transform, model=member)
                log.debug(f"Classified {m.describe()} as {case.describe()}")
                return case
    log.debug(f"No closed form for {m.describe()}")
    return AnalyticCase(family=CaseFamily.NO_CLOSED_FORM, transform=Symmetry.IDENTITY, model=m)
