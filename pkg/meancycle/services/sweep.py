"""Parameter sweeps of closed-form families and the published figure presets."""

import csv
from pathlib import Path
from typing import Callable, Dict, List, TextIO, Tuple

from meancycle.models.cases import CaseFamily
from meancycle.models.distributions import (
    Bernoulli,
    Constant,
    DiscreteUniform,
    Exponential,
    Geometric,
)
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import SweepSpec
from meancycle.services.evaluation import evaluate_exact
from meancycle.utils.exceptions import InvalidConfigurationError
from meancycle.utils.logger import log

ZERO = Constant(value=0.0)

Builder = Callable[..., MatrixModel]


def _iid(law) -> MatrixModel:
    return MatrixModel.of(law, law, law, law)


# One representative matrix per family, built from the family's parameters.
BUILDERS: Dict[CaseFamily, Tuple[Tuple[str, ...], Builder]] = {
    CaseFamily.IID_EXPONENTIAL: (("mu",), lambda mu: _iid(Exponential(rate=mu))),
    CaseFamily.IID_BERNOULLI: (("p",), lambda p: _iid(Bernoulli(p=p))),
    CaseFamily.IID_GEOMETRIC: (("p",), lambda p: _iid(Geometric(p=p))),
    CaseFamily.IID_DISCRETE_UNIFORM: (("m",), lambda m: _iid(DiscreteUniform(m=int(round(m))))),
    CaseFamily.DIAG_OFFDIAG_EXPONENTIAL: (
        ("mu", "nu"),
        lambda mu, nu: MatrixModel.of(Exponential(rate=mu), Exponential(rate=nu), Exponential(rate=nu), Exponential(rate=mu)),
    ),
    CaseFamily.PURE_EXPONENTIAL: (
        ("mu", "nu", "sigma", "tau"),
        lambda mu, nu, sigma, tau: MatrixModel.of(*(Exponential(rate=r) for r in (mu, nu, sigma, tau))),
    ),
    CaseFamily.ZERO_OFFDIAG: (
        ("mu", "tau"),
        lambda mu, tau: MatrixModel.of(Exponential(rate=mu), ZERO, ZERO, Exponential(rate=tau)),
    ),
    CaseFamily.ZERO_DIAG: (
        ("nu", "sigma"),
        lambda nu, sigma: MatrixModel.of(ZERO, Exponential(rate=nu), Exponential(rate=sigma), ZERO),
    ),
    CaseFamily.ZERO_ROW: (
        ("mu", "nu"),
        lambda mu, nu: MatrixModel.of(Exponential(rate=mu), Exponential(rate=nu), ZERO, ZERO),
    ),
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_MU: (
        ("mu", "nu"),
        lambda mu, nu: MatrixModel.of(Exponential(rate=mu), Exponential(rate=nu), Exponential(rate=mu), ZERO),
    ),
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_NU: (
        ("mu", "nu"),
        lambda mu, nu: MatrixModel.of(Exponential(rate=mu), Exponential(rate=nu), Exponential(rate=nu), ZERO),
    ),
    CaseFamily.ONE_ZERO_OFFDIAG_NU_EQ_MU: (
        ("mu", "tau"),
        lambda mu, tau: MatrixModel.of(Exponential(rate=mu), Exponential(rate=mu), ZERO, Exponential(rate=tau)),
    ),
    CaseFamily.ONE_ZERO_OFFDIAG_TAU_EQ_MU: (
        ("mu", "nu"),
        lambda mu, nu: MatrixModel.of(Exponential(rate=mu), Exponential(rate=nu), ZERO, Exponential(rate=mu)),
    ),
    CaseFamily.CONST_DIAG_ONE_RANDOM: (
        ("mu", "c"),
        lambda mu, c: MatrixModel.of(Exponential(rate=mu), ZERO, ZERO, Constant(value=c)),
    ),
    CaseFamily.ZERO_ROW_CONST_DIAG: (
        ("nu", "c"),
        lambda nu, c: MatrixModel.of(Constant(value=c), Exponential(rate=nu), ZERO, ZERO),
    ),
    # exponential F, served by the arctan closed form
    CaseFamily.ZERO_ROW_GENERAL: (
        ("mu", "c"),
        lambda mu, c: MatrixModel.of(Exponential(rate=mu), Constant(value=c), ZERO, ZERO),
    ),
    CaseFamily.THREE_CONST_SYMMETRIC: (
        ("mu", "c"),
        lambda mu, c: MatrixModel.of(Exponential(rate=mu), Constant(value=c), Constant(value=c), Constant(value=c)),
    ),
}

# name: (family, varying parameter, start, stop, remaining fixed parameter)
PRESETS: Dict[str, Tuple[CaseFamily, str, float, float, str]] = {
    "fig1": (CaseFamily.CONST_DIAG_ONE_RANDOM, "c", 0.0, 3.0, "mu"),
    "fig2": (CaseFamily.CONST_DIAG_ONE_RANDOM, "mu", 0.1, 3.0, "c"),
    "fig3": (CaseFamily.ZERO_ROW_GENERAL, "c", 0.0, 3.0, "mu"),
    "fig4": (CaseFamily.ZERO_ROW_GENERAL, "mu", 0.1, 3.0, "c"),
}


def sweep_params(family: CaseFamily) -> Tuple[str, ...]:
    """Parameter names a sweep of ``family`` accepts."""
    if family not in BUILDERS:
        raise InvalidConfigurationError(f"{family.value} has no parametric closed form to sweep")
    return BUILDERS[family][0]


def preset_spec(name: str, fix: float = 1.0, points: int = 61) -> SweepSpec:
    """SweepSpec for a named figure preset; ``fix`` sets the other parameter."""
    if name not in PRESETS:
        raise InvalidConfigurationError(f"Unknown preset '{name}'; choose from {', '.join(PRESETS)}")
    family, vary, start, stop, fixed = PRESETS[name]
    return SweepSpec(case=family, vary=vary, start=start, stop=stop, points=points, fixed={fixed: fix})


def model_for(family: CaseFamily, params: Dict[str, float]) -> MatrixModel:
    """Representative model of ``family``; parameters not given default to 1."""
    names = sweep_params(family)
    build = BUILDERS[family][1]
    unknown = set(params) - set(names)
    if unknown:
        raise InvalidConfigurationError(
            f"{family.value} has no parameter(s) {', '.join(sorted(unknown))}; expected {', '.join(names)}"
        )
    return build(*(params.get(name, 1.0) for name in names))


def sweep(spec: SweepSpec) -> List[Tuple[float, float]]:
    """(parameter value, lambda) for every grid point of ``spec``."""
    names = sweep_params(spec.case)
    if spec.vary not in names:
        raise InvalidConfigurationError(
            f"Cannot vary '{spec.vary}' for {spec.case.value}; parameters are {', '.join(names)}"
        )
    log.info(f"Sweeping {spec.case.value} over {spec.vary} in [{spec.start}, {spec.stop}] ({spec.points} points)")
    rows = []
    for x in spec.grid():
        result = evaluate_exact(model_for(spec.case, {**spec.fixed, spec.vary: x}))
        rows.append((x, result.value))
    return rows


def write_csv(rows: List[Tuple[float, float]], out: TextIO) -> None:
    """CSV with header 'param,lambda'."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["param", "lambda"])
    for x, value in rows:
        writer.writerow([f"{x:.10g}", f"{value:.10f}"])


def save_csv(rows: List[Tuple[float, float]], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        write_csv(rows, f)
    log.info(f"Wrote {len(rows)} rows to {path}")
