"""Small dense linear systems by Gaussian elimination with partial pivoting."""

from typing import Optional

import numpy as np

from meancycle.config import settings
from meancycle.utils.exceptions import SingularMatrixError

# Row-major float64 array of shape (rows, cols).
DenseMatrix = np.ndarray


def solve_linear(A: DenseMatrix, b: np.ndarray, tol: Optional[float] = None) -> np.ndarray:
    """Solve A x = b.

    Args:
        A: Square coefficient matrix (left untouched).
        b: Right-hand side.
        tol: Relative pivot tolerance; a pivot below ``tol * max|A|`` is singular.

    Returns:
        Solution vector.

    Raises:
        SingularMatrixError: If a pivot falls below the tolerance.
    """
    a = np.array(A, dtype=float)
    x = np.array(b, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n) or x.shape != (n,):
        raise ValueError(f"Expected square system, got A{a.shape} and b{x.shape}")
    tol = settings.pivot_tolerance if tol is None else tol
    threshold = tol * max(float(np.abs(a).max(initial=0.0)), np.finfo(float).tiny)

    for k in range(n):
        # Row interchange
        p = int(np.argmax(np.abs(a[k:, k]))) + k
        if abs(a[p, k]) < threshold:
            raise SingularMatrixError(k, float(a[p, k]))
        if p != k:
            a[[k, p]] = a[[p, k]]
            x[[k, p]] = x[[p, k]]

        # Elimination
        factors = a[k + 1:, k] / a[k, k]
        a[k + 1:, k:] -= np.outer(factors, a[k, k:])
        x[k + 1:] -= factors * x[k]

    # Back substitution
    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - a[k, k + 1:] @ x[k + 1:]) / a[k, k]
    return x


def solve_with_normalization(M: DenseMatrix, normalization: np.ndarray, row: int = 0) -> np.ndarray:
    """Solve M v = 0 with one equation replaced by ``normalization . v = 1``.

    M must have a one-dimensional null space; the replaced equation is then
    redundant.
    """
    system = np.array(M, dtype=float)
    system[row, :] = normalization
    rhs = np.zeros(system.shape[0])
    rhs[row] = 1.0
    return solve_linear(system, rhs)


def residual_norm(A: DenseMatrix, x: np.ndarray, b: np.ndarray) -> float:
    """Infinity norm of A x - b."""
    return float(np.abs(np.asarray(A) @ x - b).max(initial=0.0))
