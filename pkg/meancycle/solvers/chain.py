"""Exact mean cycle time for discrete entries via the difference chain.

With X(k) = x(k) - x(k-1) and Y(k) = y(k) - x(k) the recursion becomes

    X(k) = max(a11, Y(k-1) + a12)
    Y(k) = max(a21, Y(k-1) + a22) - X(k)

so Y is a Markov chain and lambda = sum_y pi(y) E[X | Y = y].
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from meancycle.analytic.catalog import Rate
from meancycle.config import settings
from meancycle.models.distributions import Distribution
from meancycle.models.matrix import MatrixModel
from meancycle.numerics.linalg import DenseMatrix, solve_with_normalization
from meancycle.utils.exceptions import (
    InvalidModelError,
    ReducibleChainError,
    SupportExplosionError,
)
from meancycle.utils.logger import log

# States closer than this are the same lattice point.
KEY_DECIMALS = 12

Atoms = Tuple[np.ndarray, np.ndarray]


@dataclass(frozen=True)
class DifferenceChain:
    """Reachable values of Y, their transition matrix and E[X | Y = y]."""

    support: np.ndarray
    transition: DenseMatrix
    increment_mean: np.ndarray

    @property
    def size(self) -> int:
        return int(self.support.size)


def _merge(values: np.ndarray, probs: np.ndarray) -> Atoms:
    keys = np.round(values, KEY_DECIMALS) + 0.0  # folds -0.0 into 0.0
    unique, inverse = np.unique(keys, return_inverse=True)
    return unique, np.bincount(inverse.ravel(), weights=probs.ravel())


def _max_law(first: Atoms, second: Atoms, shift: float) -> Atoms:
    """Law of max(A, y + B) for independent A and B."""
    values = np.maximum.outer(first[0], shift + second[0])
    probs = np.multiply.outer(first[1], second[1])
    return _merge(values, probs)


def _entry_atoms(d: Distribution, truncation: float) -> Atoms:
    if not d.is_discrete:
        raise InvalidModelError(f"Entry law {d.dist} has no finite support; the difference chain needs discrete entries")
    values, probs = d.atoms(truncation)
    return np.asarray(values, dtype=float), np.asarray(probs, dtype=float)


def build_chain(m: MatrixModel, truncation: Optional[float] = None, max_states: Optional[int] = None) -> DifferenceChain:
    """Discover the states reachable from Y(0) = 0 and their transitions.

    Raises:
        InvalidModelError: If an entry is not discrete.
        SupportExplosionError: If more than ``max_states`` states are reachable.
    """
    truncation = settings.geometric_truncation if truncation is None else truncation
    max_states = settings.chain_max_states if max_states is None else max_states
    alpha, beta, gamma, delta = (_entry_atoms(d, truncation) for d in m.entries)

    index: Dict[float, int] = {0.0: 0}
    rows: Dict[int, Atoms] = {}
    means: Dict[int, float] = {}
    queue = deque([0.0])
    while queue:
        y = queue.popleft()
        v_values, v_probs = _max_law(alpha, beta, y)
        u_values, u_probs = _max_law(gamma, delta, y)
        means[index[y]] = float(v_values @ v_probs)
        next_values, next_probs = _merge(
            np.subtract.outer(u_values, v_values), np.multiply.outer(u_probs, v_probs)
        )
        rows[index[y]] = (next_values, next_probs)
        for value in next_values.tolist():
            if value not in index:
                index[value] = len(index)
                if len(index) > max_states:
                    raise SupportExplosionError(max_states)
                queue.append(value)

    states = np.array(sorted(index))
    position = {value: i for i, value in enumerate(states.tolist())}
    n = states.size
    transition = np.zeros((n, n))
    increment_mean = np.zeros(n)
    for value, old in index.items():
        i = position[value]
        next_values, next_probs = rows[old]
        for target, p in zip(next_values.tolist(), next_probs.tolist()):
            transition[i, position[target]] += p
        increment_mean[i] = means[old]

    log.debug(f"Difference chain with {n} states on [{states[0]}, {states[-1]}]")
    return DifferenceChain(states, transition, increment_mean)


def recurrent_class(ch: DifferenceChain) -> np.ndarray:
    """Indices of the unique closed communicating class.

    Raises:
        ReducibleChainError: If several closed classes are reachable.
    """
    graph = csr_matrix(ch.transition > 0.0)
    n_classes, labels = connected_components(graph, directed=True, connection="strong")
    closed = []
    for label in range(n_classes):
        members = np.flatnonzero(labels == label)
        outside = np.flatnonzero(labels != label)
        if not ch.transition[np.ix_(members, outside)].any():
            closed.append(members)
    if len(closed) != 1:
        raise ReducibleChainError(f"Difference chain has {len(closed)} closed classes; expected exactly one")
    return closed[0]


def stationary(ch: DifferenceChain) -> np.ndarray:
    """Stationary distribution over ``ch.support``; transient states get 0."""
    members = recurrent_class(ch)
    P = ch.transition[np.ix_(members, members)]
    # pi (P - I) = 0 transposed, first equation replaced by sum(pi) = 1
    pi_members = solve_with_normalization(P.T - np.eye(members.size), np.ones(members.size), row=0)
    pi = np.zeros(ch.size)
    pi[members] = pi_members
    return pi


def lambda_discrete(m: MatrixModel, truncation: Optional[float] = None) -> Rate:
    """Mean cycle time of a model whose four entries are discrete."""
    ch = build_chain(m, truncation)
    pi = stationary(ch)
    return Rate(float(pi @ ch.increment_mean))
