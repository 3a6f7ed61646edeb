"""Pydantic schemas for model files, solver configuration and results."""

from typing import Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from meancycle.config import settings
from meancycle.models.cases import CaseFamily
from meancycle.models.matrix import MatrixModel, Symmetry


# Model file schema

class ModelFile(BaseModel):
    """On-disk model description: {"entries": {"a11": {...}, ...}}."""
    entries: MatrixModel


# Simulation schemas

class SimConfig(BaseModel):
    """Monte Carlo run parameters."""
    steps: int = Field(default_factory=lambda: settings.sim_steps, ge=1000)
    replications: int = Field(default_factory=lambda: settings.sim_replications, ge=2)
    seed: int = Field(default_factory=lambda: settings.sim_seed, ge=0, lt=2**64)
    renorm_period: int = Field(default_factory=lambda: settings.sim_renorm_period, ge=1)


class Estimate(BaseModel):
    """Monte Carlo estimate of the mean cycle time."""
    lambda_hat: float
    stderr: float = Field(ge=0)
    per_replication: List[float] = Field(default_factory=list)
    steps: int
    replications: int
    seed: int
    renorm_period: int


# Exact evaluation schemas

class ExactResult(BaseModel):
    """Mean cycle time from a closed form or an exact solver."""
    family: CaseFamily
    transform: Symmetry
    params: Dict[str, float] = Field(default_factory=dict)
    method: str
    value: float
    exact: Optional[str] = None  # reduced fraction, e.g. "407/228"
    precision: float = 0.0

    @property
    def low_precision(self) -> bool:
        return self.precision > 0.0


class ComparisonRecord(BaseModel):
    """Exact value (when available) against a Monte Carlo estimate."""
    family: CaseFamily
    transform: Symmetry
    exact: Optional[ExactResult] = None
    estimate: Estimate
    z_score: Optional[float] = None
    threshold: float
    passed: bool


# Sweep schemas

class SweepSpec(BaseModel):
    """One curve of lambda against a single varying parameter."""
    case: CaseFamily
    vary: str
    start: float
    stop: float
    points: int = Field(ge=2)
    fixed: Dict[str, float] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_range(self):
        if not self.start < self.stop:
            raise ValueError(f"sweep range must satisfy from < to, got {self.start} .. {self.stop}")
        return self

    def grid(self) -> List[float]:
        span = self.stop - self.start
        return [self.start + i * span / (self.points - 1) for i in range(self.points - 1)] + [self.stop]


class TableRow(BaseModel):
    """Published reference value next to its recomputation."""
    label: str
    published: str
    published_value: float
    recomputed: float
    method: str
    difference: float
    tolerance: float

    @property
    def agrees(self) -> bool:
        return self.difference <= self.tolerance


# API request schemas

class SimulateRequest(BaseModel):
    """Request body for simulation and comparison endpoints."""
    model: ModelFile
    config: Optional[SimConfig] = None


# API response schemas

class ClassifyResponse(BaseModel):
    """Classification of a posted model."""
    family: CaseFamily
    transform: Symmetry
    params: Dict[str, float]


class AnalyticResponse(BaseModel):
    """Exact mean cycle time of a posted model."""
    model_config = ConfigDict(populate_by_name=True)

    family: CaseFamily
    transform: Symmetry
    method: str
    lambda_: float = Field(alias="lambda")
    exact: Optional[str] = None
    low_precision: bool = False
