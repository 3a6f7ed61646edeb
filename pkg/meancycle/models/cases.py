"""Formula families a matrix model can be classified onto."""

import enum
from typing import Dict, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from meancycle.models.distributions import Distribution
from meancycle.models.matrix import MatrixModel, Symmetry


class CaseFamily(str, enum.Enum):
    """Formula family enumeration, most specific first."""
    IID_EXPONENTIAL = "IidExponential"
    IID_UNIFORM01 = "IidUniform01"
    IID_BERNOULLI = "IidBernoulli"
    IID_GEOMETRIC = "IidGeometric"
    IID_DISCRETE_UNIFORM = "IidDiscreteUniform"
    DIAG_OFFDIAG_EXPONENTIAL = "DiagOffdiagExponential"
    PURE_EXPONENTIAL = "PureExponential"
    ZERO_OFFDIAG = "ZeroOffdiag"
    ZERO_DIAG = "ZeroDiag"
    ZERO_ROW = "ZeroRow"
    ONE_ZERO_DIAG_SIGMA_EQ_MU = "OneZeroDiag_SigmaEqMu"
    ONE_ZERO_DIAG_SIGMA_EQ_NU = "OneZeroDiag_SigmaEqNu"
    ONE_ZERO_OFFDIAG_NU_EQ_MU = "OneZeroOffdiag_NuEqMu"
    ONE_ZERO_OFFDIAG_TAU_EQ_MU = "OneZeroOffdiag_TauEqMu"
    CONST_DIAG_ONE_RANDOM = "ConstDiagOneRandom"
    ZERO_ROW_CONST_DIAG = "ZeroRowConstDiag"
    ZERO_ROW_GENERAL = "ZeroRowGeneral"
    THREE_CONST_SYMMETRIC = "ThreeConstSymmetric"
    DISCRETE_FINITE_SUPPORT = "DiscreteFiniteSupport"
    NO_CLOSED_FORM = "NoClosedForm"


# Parameter names each family carries, in formula argument order.
FAMILY_PARAMS: Dict[CaseFamily, Tuple[str, ...]] = {
    CaseFamily.IID_EXPONENTIAL: ("mu",),
    CaseFamily.IID_UNIFORM01: (),
    CaseFamily.IID_BERNOULLI: ("p",),
    CaseFamily.IID_GEOMETRIC: ("p",),
    CaseFamily.IID_DISCRETE_UNIFORM: ("m",),
    CaseFamily.DIAG_OFFDIAG_EXPONENTIAL: ("mu", "nu"),
    CaseFamily.PURE_EXPONENTIAL: ("mu", "nu", "sigma", "tau"),
    CaseFamily.ZERO_OFFDIAG: ("mu", "tau"),
    CaseFamily.ZERO_DIAG: ("nu", "sigma"),
    CaseFamily.ZERO_ROW: ("mu", "nu"),
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_MU: ("mu", "nu"),
    CaseFamily.ONE_ZERO_DIAG_SIGMA_EQ_NU: ("mu", "nu"),
    CaseFamily.ONE_ZERO_OFFDIAG_NU_EQ_MU: ("mu", "tau"),
    CaseFamily.ONE_ZERO_OFFDIAG_TAU_EQ_MU: ("mu", "nu"),
    CaseFamily.CONST_DIAG_ONE_RANDOM: ("mu", "c"),
    CaseFamily.ZERO_ROW_CONST_DIAG: ("nu", "c"),
    CaseFamily.ZERO_ROW_GENERAL: ("c",),
    CaseFamily.THREE_CONST_SYMMETRIC: ("mu", "c"),
    CaseFamily.DISCRETE_FINITE_SUPPORT: (),
    CaseFamily.NO_CLOSED_FORM: (),
}


class AnalyticCase(BaseModel):
    """Classification of a model onto a formula family.

    ``model`` is the orbit member that matched, i.e. the input with
    ``transform`` applied. ``law`` holds the free entry law F for
    ZeroRowGeneral.
    """

    model_config = ConfigDict(frozen=True)

    family: CaseFamily
    params: Dict[str, float] = Field(default_factory=dict)
    law: Optional[Distribution] = None
    transform: Symmetry = Symmetry.IDENTITY
    model: Optional[MatrixModel] = None

    @property
    def has_closed_form(self) -> bool:
        return self.family is not CaseFamily.NO_CLOSED_FORM

    def describe(self) -> str:
        parts = [f"{k}={v:g}" for k, v in self.params.items()]
        if self.law is not None:
            parts.append(f"F={self.law.dist}")
        return f"{self.family.value}{{{', '.join(parts)}}}, transform={self.transform.value}"
