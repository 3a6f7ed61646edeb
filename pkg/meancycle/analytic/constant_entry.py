"""Mean cycle times for matrices mixing one random entry with constants."""

import math
from typing import List, Optional

from meancycle.analytic.catalog import Rate
from meancycle.config import settings
from meancycle.models.distributions import Distribution
from meancycle.numerics.quadrature import integrate
from meancycle.utils.exceptions import RatioDegenerateError, UnsupportedParamError
from meancycle.utils.logger import log


def _check(mu: float, c: float, rate_name: str = "mu") -> None:
    if not mu > 0 or not math.isfinite(mu):
        raise UnsupportedParamError(f"{rate_name} must be a positive finite rate, got {mu}")
    if not c >= 0 or not math.isfinite(c):
        raise UnsupportedParamError(f"c must be a nonnegative constant, got {c}")


def lambda_const_diag_one_random(mu: float, c: float) -> Rate:
    """[[Exp mu, 0], [0, c]]."""
    _check(mu, c)
    x = mu * c
    big_c = math.exp(-x)
    denominator = mu * (2.0 - 4.0 * x * big_c + x * x * big_c * big_c)
    return Rate(c + 2.0 * math.exp(-3.0 * x) / denominator)


def lambda_zero_row_const_diag(nu: float, c: float) -> Rate:
    """[[c, Exp nu], [0, 0]]; the transposed zero-column twin takes sigma for nu."""
    _check(nu, c, "nu")
    e2 = math.exp(-2.0 * nu * c)
    return Rate(c + 2.0 * e2 / (nu * (2.0 + e2)))


def lambda_zero_row_exp_const(mu: float, c: float) -> Rate:
    """[[Exp mu, c], [0, 0]] via the arctan closed form."""
    _check(mu, c)
    x = mu * c
    if x > 1400.0:
        # every term but c/2 has underflowed
        return Rate(c / 2.0)
    # r = sqrt(4 e^x - 1), arranged to avoid overflow of e^x
    r = 2.0 * math.exp(x / 2.0) * math.sqrt(1.0 - math.exp(-x) / 4.0)
    return Rate(c / 2.0 + math.exp(-x) / mu + (3.0 * math.atan(r) - math.pi) / (mu * r))


def lambda_three_const_symmetric(mu: float, c: float) -> Rate:
    """[[Exp mu, c], [c, c]]."""
    _check(mu, c)
    e = math.exp(-mu * c)
    return Rate(c + 2.0 * e / (mu * (2.0 + e - 2.0 * e * e + e ** 3)))


def split_points(F: Distribution, c: float) -> List[float]:
    """Points in (0, c) where F(t) F(c - t) may jump or kink."""
    points = set()
    for p in F.jump_points():
        for q in (p, c - p):
            if 0.0 < q < c:
                points.add(float(q))
    return sorted(points)


def check_ratio(F: Distribution, c: float, threshold: Optional[float] = None) -> float:
    """Largest G(t) = F(t) F(c - t) over piece midpoints of (0, c).

    Raises:
        RatioDegenerateError: If G reaches 1 - threshold on some piece.
    """
    threshold = settings.ratio_degenerate_threshold if threshold is None else threshold
    edges = [0.0, *split_points(F, c), c]
    g_max = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        # quarter points catch pieces where G is 1 on part of a smooth piece
        for t in (a + 0.25 * (b - a), 0.5 * (a + b), a + 0.75 * (b - a)):
            g = float(F.cdf(t)) * float(F.cdf(c - t))
            if g >= 1.0 - threshold:
                raise RatioDegenerateError(
                    f"F(t)F(c-t) = {g:.15f} on ({a:g}, {b:g}); the increment does not settle to a limit law"
                )
            g_max = max(g_max, g)
    return g_max


def zero_row_integrand(F: Distribution, c: float):
    """t -> F(t) F(c-t) (1 - F(t)) / (1 - F(t) F(c-t)), bounded by 1."""
    def h(t: float) -> float:
        ft = float(F.cdf(t))
        g = ft * float(F.cdf(c - t))
        if g >= 1.0:
            return 0.0
        return g * (1.0 - ft) / (1.0 - g)
    return h


def lambda_zero_row_general(F: Distribution, c: float, tol: Optional[float] = None) -> Rate:
    """[[F, c], [0, 0]] for any nonnegative F with finite mean.

    lambda = E[F] + integral over (0, c) of F(t)F(c-t)(1-F(t)) / (1-F(t)F(c-t)).
    """
    if not c >= 0 or not math.isfinite(c):
        raise UnsupportedParamError(f"c must be a nonnegative constant, got {c}")
    a = F.mean()
    if c == 0.0:
        return Rate(a)
    g_max = check_ratio(F, c)
    result = integrate(zero_row_integrand(F, c), 0.0, c, tol=tol, points=split_points(F, c))
    log.debug(f"Zero-row integral for {F.dist} at c={c}: {result.value} "
              f"(err {result.error_estimate:.2e}, {result.evaluations} evaluations, G_max={g_max:.6f})")
    return Rate(a + result.value)
