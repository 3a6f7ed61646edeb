"""Monte Carlo estimation of the mean cycle time.

Each replication runs z(k) = A(k) z(k-1) from z(0) = (0, 0) on its own
substream SeedSequence([seed, replication]). Every ``renorm_period`` steps
the norm is subtracted from both components and added to a running shift,
so the estimate (shift + ||z(k)||) / k is unchanged while the state stays
bounded.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Iterator, List, Optional, Tuple

import numpy as np

from meancycle.algebra.semiring import MaxPlusMatrix2, MaxPlusVector2, mat_vec
from meancycle.config import settings
from meancycle.models.matrix import MatrixModel
from meancycle.models.schemas import Estimate, SimConfig
from meancycle.utils.exceptions import InvalidModelError, NonFiniteError
from meancycle.utils.logger import log

# Draws per entry per block; fixed so the stream does not depend on renorm_period.
SAMPLE_BLOCK = 4096

Columns = Tuple[List[float], List[float], List[float], List[float]]


def replication_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for one replication."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _blocks(m: MatrixModel, rng: np.random.Generator, steps: int) -> Iterator[Columns]:
    done = 0
    while done < steps:
        n = min(SAMPLE_BLOCK, steps - done)
        yield tuple(np.asarray(d.sample(rng, n), dtype=float).tolist() for d in m.entries)
        done += n


def replication_lambda(m: MatrixModel, steps: int, seed: int, index: int, renorm_period: int) -> float:
    """(shift + ||z(steps)||) / steps for one replication.

    Raises:
        NonFiniteError: If the state overflows.
    """
    rng = replication_rng(seed, index)
    x = y = 0.0
    shift = 0.0
    k = 0
    for a11, a12, a21, a22 in _blocks(m, rng, steps):
        n = len(a11)
        start = 0
        while start < n:
            stop = min(n, start + renorm_period - (k + start) % renorm_period)
            for a, b, c, d in zip(a11[start:stop], a12[start:stop], a21[start:stop], a22[start:stop]):
                x, y = max(x + a, y + b), max(x + c, y + d)
            start = stop
            if (k + start) % renorm_period == 0:
                top = x if x >= y else y
                x -= top
                y -= top
                shift += top
        k += n
    estimate = (shift + max(x, y)) / steps
    if not math.isfinite(estimate):
        raise NonFiniteError(f"Replication {index} overflowed after {steps} steps")
    return estimate


def trajectory(m: MatrixModel, steps: int, seed: int, index: int = 0) -> List[MaxPlusVector2]:
    """States z(0), ..., z(steps) of one replication in semiring arithmetic.

    Consumes the same stream as ``replication_lambda`` for equal (seed, index).
    """
    rng = replication_rng(seed, index)
    z = MaxPlusVector2.of(0.0, 0.0)
    path = [z]
    for columns in _blocks(m, rng, steps):
        for a, b, c, d in zip(*columns):
            z = mat_vec(MaxPlusMatrix2.of(a, b, c, d), z)
            path.append(z)
    return path


def _worker_count(replications: int, workers: Optional[int]) -> int:
    if workers is None:
        workers = settings.threads or os.cpu_count() or 1
    return max(1, min(workers, replications))


def simulate(m: MatrixModel, cfg: Optional[SimConfig] = None, workers: Optional[int] = None) -> Estimate:
    """Estimate lambda by independent replications.

    Args:
        m: Matrix model; entry means must be finite.
        cfg: Run parameters; defaults come from settings.
        workers: Process count; defaults to MCT_THREADS or the CPU count.

    Returns:
        Estimate with the replication mean and its standard error.

    Raises:
        InvalidModelError: If an entry mean is not finite.
    """
    if not all(math.isfinite(mu) for mu in m.entry_means()):
        raise InvalidModelError(f"Entry means of {m.describe()} must be finite")
    cfg = cfg or SimConfig()
    n_workers = _worker_count(cfg.replications, workers)
    log.info(f"Simulating {cfg.replications} x {cfg.steps} steps (seed={cfg.seed}, workers={n_workers})")

    args = [(m, cfg.steps, cfg.seed, i, cfg.renorm_period) for i in range(cfg.replications)]
    values: Optional[List[float]] = None
    if n_workers > 1:
        try:
            with ProcessPoolExecutor(max_workers=n_workers) as executor:
                values = list(executor.map(replication_lambda, *zip(*args)))
        except (OSError, RuntimeError) as e:
            log.warning(f"Parallel replications failed: {e}. Falling back to sequential execution.")
    if values is None:
        values = [replication_lambda(*a) for a in args]

    samples = np.asarray(values)
    lambda_hat = float(samples.mean())
    stderr = float(samples.std(ddof=1) / math.sqrt(samples.size))
    log.info(f"lambda_hat = {lambda_hat:.6f} +/- {stderr:.6f}")
    return Estimate(
        lambda_hat=lambda_hat,
        stderr=stderr,
        per_replication=values,
        steps=cfg.steps,
        replications=cfg.replications,
        seed=cfg.seed,
        renorm_period=cfg.renorm_period,
    )
