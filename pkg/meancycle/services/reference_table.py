"""Published reference constants recomputed by an independent method."""

from dataclasses import dataclass
from typing import Callable, List, Optional

from meancycle.analytic.catalog import (
    DISCRETE_UNIFORM_M2_PER_UNIT,
    UNIFORM01_LAMBDA,
    IidFamily,
    ZeroPattern,
    lambda_diag_offdiag_exp,
    lambda_iid,
    lambda_zero_pattern_exp,
)
from meancycle.models.distributions import (
    Bernoulli,
    DiscreteUniform,
    Geometric,
    UniformContinuous,
)
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import SimConfig, TableRow
from meancycle.solvers.chain import lambda_discrete
from meancycle.solvers.montecarlo import simulate
from meancycle.solvers.spectral import RateQuad, lambda_pure_random
from meancycle.utils.logger import log


def _iid(law) -> MatrixModel:
    return MatrixModel.of(law, law, law, law)


@dataclass(frozen=True)
class Reference:
    """One published constant and how to recompute it."""

    label: str
    published: str
    published_value: Callable[[], float]
    recompute: Callable[[], float]
    method: str
    tolerance: float
    needs_mc: bool = False


def _uniform_mc() -> float:
    return simulate(_iid(UniformContinuous(lo=0.0, hi=1.0)), SimConfig(seed=42)).lambda_hat


REFERENCES: List[Reference] = [
    Reference(
        "n=2, m=1", "6/7",
        lambda: 6 / 7,
        lambda: lambda_discrete(_iid(DiscreteUniform(m=1))).value,
        "chain", 1e-12,
    ),
    Reference(
        "n=2, m=2 (per unit)", "0.803",
        lambda: DISCRETE_UNIFORM_M2_PER_UNIT[0],
        lambda: lambda_discrete(_iid(DiscreteUniform(m=2))).value / 2,
        "chain", DISCRETE_UNIFORM_M2_PER_UNIT[1],
    ),
    Reference(
        "iid Bernoulli p=0.3", "rational formula",
        lambda: lambda_iid(IidFamily.BERNOULLI, 0.3).value,
        lambda: lambda_discrete(_iid(Bernoulli(p=0.3))).value,
        "chain", 1e-12,
    ),
    Reference(
        "iid geometric p=0.5", "N(p)/D(p)",
        lambda: lambda_iid(IidFamily.GEOMETRIC, 0.5).value,
        lambda: lambda_discrete(_iid(Geometric(p=0.5))).value,
        "chain", 1e-6,
    ),
    Reference(
        "iid exp mu=1", "407/228",
        lambda: 407 / 228,
        lambda: lambda_pure_random(RateQuad(1.0, 1.0, 1.0, 1.0)).value,
        "spectral", 1e-10,
    ),
    Reference(
        "diag/offdiag exp, nu -> inf", "5/4",
        lambda: 1.25,
        lambda: lambda_diag_offdiag_exp(1.0, 1e8).value,
        "closed_form", 1e-6,
    ),
    Reference(
        "zero offdiag exp mu=tau=1", "5/4",
        lambda: 1.25,
        lambda: lambda_zero_pattern_exp(ZeroPattern.ZERO_OFFDIAG, 1, 1).value,
        "closed_form", 1e-12,
    ),
    Reference(
        "zero diag exp nu=sigma=1", "5/4",
        lambda: 1.25,
        lambda: lambda_zero_pattern_exp(ZeroPattern.ZERO_DIAG, 1, 1).value,
        "closed_form", 1e-12,
    ),
    Reference(
        "uniform[0,1]", "0.719",
        lambda: UNIFORM01_LAMBDA[0],
        _uniform_mc,
        "monte_carlo", 0.002, needs_mc=True,
    ),
]


def build_table(include_mc: bool = True, references: Optional[List[Reference]] = None) -> List[TableRow]:
    """Recompute every reference; Monte Carlo rows only when ``include_mc``."""
    rows = []
    for ref in references or REFERENCES:
        if ref.needs_mc and not include_mc:
            log.debug(f"Skipping '{ref.label}': Monte Carlo disabled")
            continue
        published_value = ref.published_value()
        recomputed = ref.recompute()
        rows.append(TableRow(
            label=ref.label,
            published=ref.published,
            published_value=published_value,
            recomputed=recomputed,
            method=ref.method,
            difference=abs(recomputed - published_value),
            tolerance=ref.tolerance,
        ))
    return rows
