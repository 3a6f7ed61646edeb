"""Mean cycle time endpoints."""

from typing import List

from fastapi import APIRouter, Depends, Query

from meancycle.config import Settings, get_settings
from meancycle.models.schemas import (
    AnalyticResponse,
    ClassifyResponse,
    ComparisonRecord,
    Estimate,
    ModelFile,
    SimulateRequest,
    TableRow,
)
from meancycle.services import evaluation
from meancycle.services.classifier import classify
from meancycle.services.reference_table import build_table
from meancycle.solvers.montecarlo import simulate
from meancycle.utils.exceptions import MeanCycleError, UnsolvableModelError
from meancycle.utils.logger import log

router = APIRouter()


@router.post("/classify", response_model=ClassifyResponse)
async def classify_model(body: ModelFile):
    """
    Classify a model onto a closed-form family.

    Args:
        body: Model description

    Returns:
        Family, symmetry transform and parameters
    """
    case = classify(body.entries)
    return ClassifyResponse(family=case.family, transform=case.transform, params=case.params)


@router.post("/analytic", response_model=AnalyticResponse)
async def analytic_lambda(body: ModelFile):
    """
    Compute lambda from the matching formula or exact solver.

    Args:
        body: Model description

    Returns:
        Exact result; 422 when no closed form applies
    """
    try:
        result = evaluation.evaluate_exact(body.entries)
    except MeanCycleError as e:
        log.warning(f"Analytic evaluation failed: {e}")
        raise UnsolvableModelError(f"{type(e).__name__}: {e}")
    return AnalyticResponse(
        family=result.family,
        transform=result.transform,
        method=result.method,
        lambda_=result.value,
        exact=result.exact,
        low_precision=result.low_precision,
    )


@router.post("/simulate", response_model=Estimate)
def simulate_lambda(body: SimulateRequest):
    """
    Estimate lambda by Monte Carlo.

    Args:
        body: Model and optional simulation config

    Returns:
        Estimate with standard error
    """
    try:
        return simulate(body.model.entries, body.config)
    except MeanCycleError as e:
        raise UnsolvableModelError(f"{type(e).__name__}: {e}")


@router.post("/compare", response_model=ComparisonRecord)
def compare_lambda(body: SimulateRequest, settings: Settings = Depends(get_settings)):
    """
    Cross-check the exact value against Monte Carlo.

    Args:
        body: Model and optional simulation config
        settings: Application settings

    Returns:
        Comparison record with z-score
    """
    try:
        return evaluation.compare(body.model.entries, body.config, threshold=settings.compare_z_threshold)
    except MeanCycleError as e:
        raise UnsolvableModelError(f"{type(e).__name__}: {e}")


@router.get("/table", response_model=List[TableRow])
def reference_table(include_mc: bool = Query(False)):
    """
    Published reference constants next to their recomputation.

    Args:
        include_mc: Include rows recomputed by Monte Carlo

    Returns:
        Table rows
    """
    return build_table(include_mc=include_mc)
