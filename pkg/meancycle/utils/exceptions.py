"""Custom exceptions for the toolkit."""

from typing import Optional
from fastapi import HTTPException, status


class MeanCycleError(Exception):
    """Base exception for mean cycle time computations."""
    pass


class InvalidModelError(MeanCycleError):
    """Exception raised when a matrix model or its parameters are invalid."""
    pass


class InvalidConfigurationError(MeanCycleError):
    """Exception raised when configuration or a sweep spec is invalid."""
    pass


class SingularMatrixError(MeanCycleError):
    """Exception raised when elimination meets a pivot below tolerance."""
    def __init__(self, column: int, pivot: float):
        self.column = column
        self.pivot = pivot
        super().__init__(f"Singular matrix: pivot {pivot:.3e} in column {column}")


class QuadratureError(MeanCycleError):
    """Base exception for quadrature failures."""
    pass


class MaxDepthError(QuadratureError):
    """Exception raised when adaptive subdivision hits the depth limit."""
    def __init__(self, lo: float, hi: float, depth: int):
        self.lo = lo
        self.hi = hi
        self.depth = depth
        super().__init__(f"Quadrature depth limit {depth} reached on [{lo!r}, {hi!r}]")


class NonFiniteError(MeanCycleError):
    """Exception raised when a computation produces a non-finite value."""
    def __init__(self, message: str, at: Optional[float] = None):
        self.at = at
        super().__init__(message)


class UnsupportedParamError(MeanCycleError):
    """Exception raised when a parameter lies outside a formula's domain."""
    pass


class RatioDegenerateError(MeanCycleError):
    """Exception raised when F(t)F(c-t) reaches 1 on a set of positive measure."""
    pass


class SupportExplosionError(MeanCycleError):
    """Exception raised when the difference chain outgrows the state limit."""
    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"Difference chain exceeded {limit} reachable states")


class ReducibleChainError(MeanCycleError):
    """Exception raised when more than one closed class is reachable."""
    pass


class NoClosedFormError(MeanCycleError):
    """Exception raised when no formula or exact solver applies to a model."""
    pass


class UnsolvableModelError(HTTPException):
    """Exception raised by API routes when a model cannot be evaluated."""
    def __init__(self, reason: str):
        super().__init__(
            status_code=status.HTTP_422_UNPROCESSABLE_ENTITY,
            detail=reason
        )
