"""Sampling signed graphs from the two-community signed stochastic block model.

Every unordered pair ``i < j`` gets one uniform draw ``r`` from a PCG64
stream (``numpy.random.default_rng(seed)``), consumed in lexicographic pair
order. The pair is positive if ``r < p_plus``, negative if
``p_plus <= r < p_plus + p_minus`` and absent otherwise (with ``q_*`` for
pairs across communities). Nodes ``0 .. n/2 - 1`` form the ``+1`` community.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .graph import SignedGraph

__all__ = ["SsbmParams", "GroundTruth", "sample", "sample_raw", "it_gap", "planted_labels"]

# pairs per random draw; bounds peak memory of the sampler
_CHUNK = 1 << 22


@dataclass(frozen=True)
class SsbmParams:
    """Model parameters in the logarithmic degree regime.

    Connection probabilities are ``rate * log(n) / n``: ``alpha_*`` inside a
    community, ``beta_*`` across.
    """

    n: int
    alpha_plus: float
    beta_plus: float
    alpha_minus: float
    beta_minus: float

    def __post_init__(self):
        if self.n < 4 or self.n % 2:
            raise ValueError(f"n must be even and >= 4, got {self.n}")
        rates = self.rates
        if not all(r > 0 and math.isfinite(r) for r in rates):
            raise ValueError(f"all rates must be positive, got {rates}")
        p_plus, p_minus, q_plus, q_minus = self.probabilities
        for name, p in zip(("p+", "p-", "q+", "q-"), (p_plus, p_minus, q_plus, q_minus)):
            if p > 1:
                raise ValueError(f"{name} = {p:.4g} exceeds 1 at n={self.n}")
        if p_plus + p_minus > 1 or q_plus + q_minus > 1:
            raise ValueError(f"p+ + p- or q+ + q- exceeds 1 at n={self.n}")

    @property
    def rates(self) -> tuple[float, float, float, float]:
        return (self.alpha_plus, self.beta_plus, self.alpha_minus, self.beta_minus)

    @property
    def probabilities(self) -> tuple[float, float, float, float]:
        """``(p+, p-, q+, q-)``."""
        s = math.log(self.n) / self.n
        return (self.alpha_plus * s, self.alpha_minus * s, self.beta_plus * s, self.beta_minus * s)

    def with_n(self, n: int) -> "SsbmParams":
        return SsbmParams(n, *self.rates)


@dataclass(frozen=True)
class GroundTruth:
    labels: np.ndarray

    def __post_init__(self):
        if self.labels.sum() != 0 or not np.all(np.abs(self.labels) == 1):
            raise ValueError("ground truth must be a balanced +-1 vector")


def planted_labels(n: int) -> np.ndarray:
    x = np.ones(n, dtype=np.int64)
    x[n // 2:] = -1
    return x


def sample_raw(n: int, p_plus: float, p_minus: float, q_plus: float, q_minus: float,
               seed: int) -> tuple[SignedGraph, GroundTruth]:
    """Sample with connection probabilities given directly (0 and 1 allowed)."""
    n = int(n)
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    for name, p in (("p_plus", p_plus), ("p_minus", p_minus), ("q_plus", q_plus), ("q_minus", q_minus)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} = {p} outside [0, 1]")
    if p_plus + p_minus > 1 or q_plus + q_minus > 1:
        raise ValueError("p_plus + p_minus and q_plus + q_minus must not exceed 1")

    rng = np.random.default_rng(seed)
    half = n // 2
    # row i holds pairs (i, j) for j > i; start[i] is its offset in the pair stream
    lengths = np.arange(n - 1, -1, -1, dtype=np.int64)
    start = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lengths, out=start[1:])

    us, vs, ss = [], [], []
    row = 0
    while row < n:
        # grow the row block up to the chunk budget (always at least one row)
        stop = int(np.searchsorted(start, start[row] + _CHUNK, side="right")) - 1
        stop = min(max(stop, row + 1), n)
        base = int(start[row])
        m = int(start[stop]) - base
        if m == 0:
            row = stop
            continue
        r = rng.random(m)
        rows = np.arange(row, stop)
        # segment boundaries inside each row: within-community then across
        split = np.where(rows < half, np.maximum(half, rows + 1), n)
        seg_within = split - (rows + 1)
        seg_across = n - split
        seg_len = np.column_stack([seg_within, seg_across]).ravel()
        tp = np.repeat(np.tile([p_plus, q_plus], rows.size), seg_len)
        tn = np.repeat(np.tile([p_plus + p_minus, q_plus + q_minus], rows.size), seg_len)
        is_pos = r < tp
        hit = np.flatnonzero(is_pos | (r < tn))
        k = hit + base
        u = np.searchsorted(start, k, side="right") - 1
        v = k - start[u] + u + 1
        us.append(u)
        vs.append(v)
        ss.append(np.where(is_pos[hit], 1, -1))
        row = stop

    u = np.concatenate(us) if us else np.zeros(0, dtype=np.int64)
    v = np.concatenate(vs) if vs else np.zeros(0, dtype=np.int64)
    s = np.concatenate(ss) if ss else np.zeros(0, dtype=np.int64)
    return SignedGraph.from_arrays(n, u, v, s), GroundTruth(planted_labels(n))


def sample(params: SsbmParams, seed: int) -> tuple[SignedGraph, GroundTruth]:
    """Draw a graph and its planted labels from ``params``."""
    a_p, b_p, a_m, b_m = params.rates
    if not (a_p > b_p and b_m > a_m):
        warnings.warn("rates outside alpha+ > beta+, beta- > alpha- ordering", stacklevel=2)
    return sample_raw(params.n, *params.probabilities, seed=seed)


def it_gap(params: SsbmParams | tuple[float, float, float, float]) -> float:
    """``(sqrt(a+) - sqrt(b+))^2 + (sqrt(a-) - sqrt(b-))^2 - 2``.

    Exact recovery is information-theoretically possible iff this is >= 0.
    """
    a_p, b_p, a_m, b_m = params.rates if isinstance(params, SsbmParams) else params
    return (math.sqrt(a_p) - math.sqrt(b_p)) ** 2 + (math.sqrt(a_m) - math.sqrt(b_m)) ** 2 - 2.0
