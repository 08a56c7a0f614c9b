"""Recovery metrics, the penalized objective, and an exhaustive MLE oracle."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .generate import GroundTruth
from .graph import SignedGraph

__all__ = ["RecoveryMetrics", "brute_force_mle", "compare", "mle_objective", "objective"]

MAX_BRUTE_FORCE_N = 20


@dataclass(frozen=True)
class RecoveryMetrics:
    exact: bool
    misclassified: int
    error_rate: float


def compare(labels, truth: GroundTruth | np.ndarray) -> RecoveryMetrics:
    """Hamming error against the truth, minimized over a global sign flip."""
    x = np.asarray(labels)
    t = truth.labels if isinstance(truth, GroundTruth) else np.asarray(truth)
    if x.shape != t.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {t.shape}")
    d = int(np.count_nonzero(x != t))
    miss = min(d, x.size - d)
    return RecoveryMetrics(miss == 0, miss, miss / x.size)


def objective(graph: SignedGraph, xi: float, labels) -> float:
    """``x^T (A+ - xi A- - rho E) x`` with ``rho = (2N+ - 2 xi N-) / n^2``."""
    if not math.isfinite(xi):
        raise ValueError(f"xi must be finite, got {xi}")
    x = np.asarray(labels, dtype=np.float64)
    if x.shape != (graph.n,):
        raise ValueError(f"labels have shape {x.shape}, expected ({graph.n},)")
    rho = (2.0 * graph.n_pos - 2.0 * xi * graph.n_neg) / graph.n ** 2
    q_pos = float(x @ (graph.a_pos @ x))
    q_neg = float(x @ (graph.a_neg @ x))
    return q_pos - xi * q_neg - rho * float(x.sum()) ** 2


def mle_objective(graph: SignedGraph, mu: float, nu: float, labels) -> float:
    """``x^T (mu A+ - nu A-) x``, the unpenalized likelihood objective."""
    x = np.asarray(labels, dtype=np.float64)
    return mu * float(x @ (graph.a_pos @ x)) - nu * float(x @ (graph.a_neg @ x))


def _balanced_with_first_positive(n: int) -> np.ndarray:
    # node 0 is always +1; choose the other n/2 - 1 positives among 1..n-1
    combos = np.array(list(itertools.combinations(range(1, n), n // 2 - 1)), dtype=np.int64)
    X = -np.ones((max(len(combos), 1), n), dtype=np.int8)
    X[:, 0] = 1
    if combos.size:
        np.put_along_axis(X, combos, 1, axis=1)
    return X


def brute_force_mle(graph: SignedGraph, mu: float, nu: float) -> np.ndarray:
    """Exhaustive maximizer of ``x^T (mu A+ - nu A-) x`` over balanced x.

    Only vectors with ``x[0] = +1`` are enumerated (the objective is even).
    Ties within ``1e-9`` relative are broken by the lexicographically
    smallest vector.
    """
    n = graph.n
    if n % 2:
        raise ValueError("brute force needs an even number of nodes")
    if n > MAX_BRUTE_FORCE_N:
        raise ValueError(f"n={n} exceeds the enumeration cap of {MAX_BRUTE_FORCE_N}")
    M = mu * graph.a_pos.toarray() - nu * graph.a_neg.toarray()
    X = _balanced_with_first_positive(n)
    Xf = X.astype(np.float64)
    vals = np.einsum("ij,ij->i", Xf @ M, Xf)
    best = vals.max()
    tol = 1e-9 * max(1.0, abs(best))
    ties = X[vals >= best - tol]
    # lexsort sorts by the last key first, so feed columns reversed
    first = np.lexsort(ties.T[::-1])[0]
    return ties[first].astype(np.int64)


def n_balanced_partitions(n: int) -> int:
    return math.comb(n, n // 2) // 2
