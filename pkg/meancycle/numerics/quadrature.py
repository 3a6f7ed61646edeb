"""Adaptive Simpson quadrature with breakpoint splitting."""

import math
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Optional

from meancycle.config import settings
from meancycle.utils.exceptions import MaxDepthError, NonFiniteError


@dataclass(frozen=True)
class QuadratureResult:
    """Integral estimate with its accumulated error bound."""

    value: float
    error_estimate: float
    evaluations: int


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Optional[float] = None,
    points: Optional[Iterable[float]] = None,
    max_depth: Optional[int] = None,
) -> QuadratureResult:
    """Integrate ``f`` over [lo, hi] by adaptive Simpson's rule.

    The interval is first split at every entry of ``points`` that falls
    strictly inside it, and each piece is integrated separately. Endpoint
    values of a piece are taken just inside the piece, so step functions
    with jumps at the split points integrate exactly.

    Args:
        f: Integrand, bounded and piecewise continuous on [lo, hi].
        lo: Lower bound.
        hi: Upper bound, ``hi >= lo``.
        tol: Absolute error tolerance for the whole interval.
        points: Known discontinuities or kinks of ``f``.
        max_depth: Recursion limit per piece.

    Returns:
        QuadratureResult with value, error estimate and evaluation count.

    Raises:
        MaxDepthError: If a panel does not converge within ``max_depth`` halvings.
        NonFiniteError: If ``f`` returns a non-finite value.
    """
    tol = settings.quad_tolerance if tol is None else tol
    max_depth = settings.quad_max_depth if max_depth is None else max_depth
    if hi < lo:
        raise ValueError(f"integrate requires lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 0)

    cuts = sorted({float(p) for p in (points or ()) if lo < p < hi})
    edges = [lo, *cuts, hi]
    evaluations = 0

    def evaluate(t: float) -> float:
        nonlocal evaluations
        evaluations += 1
        v = float(f(t))
        if not math.isfinite(v):
            raise NonFiniteError(f"Integrand returned {v} at t={t!r}", at=t)
        return v

    def simpson(fa: float, fm: float, fb: float, h: float) -> float:
        return h / 3.0 * (fa + 4.0 * fm + fb)

    def adaptive(a, b, fa, fm, fb, whole, depth, panel_tol):
        m = 0.5 * (a + b)
        h = 0.5 * (b - a)
        flm = evaluate(0.5 * (a + m))
        frm = evaluate(0.5 * (m + b))
        left = simpson(fa, flm, fm, 0.5 * h)
        right = simpson(fm, frm, fb, 0.5 * h)
        err = (left + right - whole) / 15.0
        if abs(err) <= panel_tol:
            # Richardson correction
            return left + right + err, abs(err)
        if depth >= max_depth:
            raise MaxDepthError(a, b, max_depth)
        lv, le = adaptive(a, m, fa, flm, fm, left, depth + 1, 0.5 * panel_tol)
        rv, re = adaptive(m, b, fm, frm, fb, right, depth + 1, 0.5 * panel_tol)
        return lv + rv, le + re

    total = 0.0
    total_err = 0.0
    span = hi - lo
    for a, b in zip(edges[:-1], edges[1:]):
        piece_tol = tol * (b - a) / span
        fa = evaluate(math.nextafter(a, b))
        fb = evaluate(math.nextafter(b, a))
        fm = evaluate(0.5 * (a + b))
        whole = simpson(fa, fm, fb, 0.5 * (b - a))
        value, err = adaptive(a, b, fa, fm, fb, whole, 0, piece_tol)
        total += value
        total_err += err
    return QuadratureResult(total, total_err, evaluations)
