"""Evaluation service: route a classified model to its formula or exact solver."""

import math
from fractions import Fraction
from typing import Callable, Dict, Optional, Tuple

from meancycle.analytic.catalog import (
    IidFamily,
    Rate,
    ZeroPattern,
    lambda_diag_offdiag_exp,
    lambda_iid,
    lambda_one_zero_entry_exp,
    lambda_zero_pattern_exp,
)
from meancycle.analytic.constant_entry import (
    lambda_const_diag_one_random,
    lambda_three_const_symmetric,
    lambda_zero_row_const_diag,
    lambda_zero_row_exp_const,
    lambda_zero_row_general,
)
from meancycle.config import settings
from meancycle.models.cases import AnalyticCase, CaseFamily
from meancycle.models.distributions import Exponential
from meancycle.models.matrix import MatrixModel, rate_tuple
from meancycle.models.schemas import ComparisonRecord, ExactResult, SimConfig
from meancycle.services.classifier import classify
from meancycle.solvers.chain import lambda_discrete
from meancycle.solvers.montecarlo import simulate
from meancycle.solvers.spectral import RateQuad, lambda_pure_random
from meancycle.utils.exceptions import NoClosedFormError, RatioDegenerateError
from meancycle.utils.logger import log

Evaluator = Callable[[AnalyticCase], Tuple[Rate, str]]


def format_fraction(q: Optional[Fraction]) -> Optional[str]:
    """'407/228' style rendering; integers print without a denominator."""
    if q is None:
        return None
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


_IID_KINDS: Dict[CaseFamily, Tuple[IidFamily, Optional[str]]] = {
    CaseFamily.IID_EXPONENTIAL: (IidFamily.EXPONENTIAL, "mu"),
    CaseFamily.IID_UNIFORM01: (IidFamily.UNIFORM01, None),
    CaseFamily.IID_BERNOULLI: (IidFamily.BERNOULLI, "p"),
    CaseFamily.IID_GEOMETRIC: (IidFamily.GEOMETRIC, "p"),
    CaseFamily.IID_DISCRETE_UNIFORM: (IidFamily.DISCRETE_UNIFORM, "m"),
}

_ZERO_PATTERNS: Dict[CaseFamily, Tuple[ZeroPattern, str, str]] = {
    CaseFamily.ZERO_OFFDIAG: (ZeroPattern.ZERO_OFFDIAG, "mu", "tau"),
    CaseFamily.ZERO_DIAG: (ZeroPattern.ZERO_DIAG, "nu", "sigma"),
    CaseFamily.ZERO_ROW: (ZeroPattern.ZERO_ROW, "mu", "nu"),
}

_ONE_ZERO_OTHER: Dict[CaseFamily, str] = {
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_MU: "nu",
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_NU: "nu",
    CaseFamily.ONE_ZERO_OFFDIAG_NU_EQ_MU: "tau",
    CaseFamily.ONE_ZERO_OFFDIAG_TAU_EQ_MU: "nu",
}


def _iid(case: AnalyticCase) -> Tuple[Rate, str]:
    kind, name = _IID_KINDS[case.family]
    param = case.params[name] if name else None
    if kind is IidFamily.DISCRETE_UNIFORM and param >= 2:
        # the printed m=2 constant has three decimals; the chain is exact
        return lambda_discrete(case.model), "chain"
    rate = lambda_iid(kind, int(param) if kind is IidFamily.DISCRETE_UNIFORM else param)
    return rate, "printed_constant" if rate.low_precision else "closed_form"


def _diag_offdiag(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_diag_offdiag_exp(case.params["mu"], case.params["nu"]), "closed_form"


def _pure_exponential(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_pure_random(RateQuad(*rate_tuple(case.model))), "spectral"


def _zero_pattern(case: AnalyticCase) -> Tuple[Rate, str]:
    pattern, first, second = _ZERO_PATTERNS[case.family]
    return lambda_zero_pattern_exp(pattern, case.params[first], case.params[second]), "closed_form"


def _one_zero(case: AnalyticCase) -> Tuple[Rate, str]:
    other = case.params[_ONE_ZERO_OTHER[case.family]]
    return lambda_one_zero_entry_exp(case.family, case.params["mu"], other), "closed_form"


def _const_diag(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_const_diag_one_random(case.params["mu"], case.params["c"]), "closed_form"


def _zero_row_const_diag(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_zero_row_const_diag(case.params["nu"], case.params["c"]), "closed_form"


def _three_const(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_three_const_symmetric(case.params["mu"], case.params["c"]), "closed_form"


def _zero_row_general(case: AnalyticCase) -> Tuple[Rate, str]:
    c = case.params["c"]
    if isinstance(case.law, Exponential):
        return lambda_zero_row_exp_const(case.law.rate, c), "arctan_closed_form"
    try:
        return lambda_zero_row_general(case.law, c), "quadrature"
    except RatioDegenerateError as e:
        if not all(d.is_discrete for d in case.model.entries):
            raise
        log.warning(f"{e}; using the difference chain instead")
        return lambda_discrete(case.model), "chain"


def _discrete(case: AnalyticCase) -> Tuple[Rate, str]:
    return lambda_discrete(case.model), "chain"


EVALUATORS: Dict[CaseFamily, Evaluator] = {
    **{family: _iid for family in _IID_KINDS},
    CaseFamily.DIAG_OFFDIAG_EXPONENTIAL: _diag_offdiag,
    CaseFamily.PURE_EXPONENTIAL: _pure_exponential,
    **{family: _zero_pattern for family in _ZERO_PATTERNS},
    **{family: _one_zero for family in _ONE_ZERO_OTHER},
    CaseFamily.CONST_DIAG_ONE_RANDOM: _const_diag,
    CaseFamily.ZERO_ROW_CONST_DIAG: _zero_row_const_diag,
    CaseFamily.ZERO_ROW_GENERAL: _zero_row_general,
    CaseFamily.THREE_CONST_SYMMETRIC: _three_const,
    CaseFamily.DISCRETE_FINITE_SUPPORT: _discrete,
}


def evaluate_case(case: AnalyticCase) -> ExactResult:
    """Evaluate the formula or solver that serves ``case.family``.

    Raises:
        NoClosedFormError: If the case is NoClosedForm.
    """
    evaluator = EVALUATORS.get(case.family)
    if evaluator is None:
        raise NoClosedFormError(f"No closed form or exact solver applies to {case.model.describe() if case.model else 'this model'}")
    rate, method = evaluator(case)
    log.info(f"{case.describe()}: lambda = {rate.value:.6f} via {method}")
    return ExactResult(
        family=case.family,
        transform=case.transform,
        params=case.params,
        method=method,
        value=rate.value,
        exact=format_fraction(rate.exact),
        precision=rate.precision,
    )


def evaluate_exact(m: MatrixModel) -> ExactResult:
    """Classify ``m`` and evaluate the matched family."""
    return evaluate_case(classify(m))


def z_score(lambda_hat: float, stderr: float, exact: float, precision: float = 0.0) -> float:
    """(lambda_hat - exact) / sqrt(stderr^2 + precision^2)."""
    diff = lambda_hat - exact
    scale = math.hypot(stderr, precision)
    if scale == 0.0:
        if math.isclose(lambda_hat, exact, rel_tol=1e-9, abs_tol=1e-12):
            return 0.0
        return math.copysign(math.inf, diff)
    return diff / scale


def compare(
    m: MatrixModel,
    cfg: Optional[SimConfig] = None,
    workers: Optional[int] = None,
    threshold: Optional[float] = None,
) -> ComparisonRecord:
    """Cross-check the exact value of ``m`` (when one exists) against Monte Carlo.

    Returns:
        ComparisonRecord; ``passed`` is True when |z| <= threshold or no
        exact value applies.
    """
    threshold = settings.compare_z_threshold if threshold is None else threshold
    case = classify(m)
    exact: Optional[ExactResult] = None
    if case.has_closed_form:
        exact = evaluate_case(case)
    else:
        log.info(f"{m.describe()} has no closed form; reporting Monte Carlo only")

    estimate = simulate(m, cfg, workers=workers)
    z = None
    passed = True
    if exact is not None:
        z = z_score(estimate.lambda_hat, estimate.stderr, exact.value, exact.precision)
        passed = abs(z) <= threshold
        if not passed:
            log.warning(f"{case.family.value}: |z| = {abs(z):.2f} exceeds {threshold}")
    return ComparisonRecord(
        family=case.family,
        transform=case.transform,
        exact=exact,
        estimate=estimate,
        z_score=z,
        threshold=threshold,
        passed=passed,
    )
