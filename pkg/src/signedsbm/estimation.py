"""Moment estimator for the SSBM rates and the negative-edge weight xi.

Expected edge and triangle counts of one sign layer with within/across
rates ``(x, y)`` are ``a (x + y)`` and ``b (x^3 + 3 x y^2)`` where
``a = n log n / 4`` and ``b = log^3 n / 24``. Matching them to the observed
counts gives a cubic with a single real root, solved in closed form below.
All logarithms are natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .generate import SsbmParams
from .graph import GraphMoments, SignedGraph, count_moments

__all__ = [
    "EstimatedParams",
    "MleWeights",
    "estimate_graph",
    "estimate_params",
    "expected_moments",
    "mle_weights",
    "solve_cubic_system",
    "xi_exact",
    "xi_from_rates",
]


@dataclass(frozen=True)
class EstimatedParams:
    alpha_hat_plus: float
    beta_hat_plus: float
    alpha_hat_minus: float
    beta_hat_minus: float
    xi_hat: float | None
    plausible: bool

    @property
    def rates(self) -> tuple[float, float, float, float]:
        return (self.alpha_hat_plus, self.beta_hat_plus, self.alpha_hat_minus, self.beta_hat_minus)


@dataclass(frozen=True)
class MleWeights:
    mu_n: float
    nu_n: float


def moment_scales(n: int) -> tuple[float, float]:
    """``(a, b) = (n log n / 4, log^3 n / 24)``."""
    L = math.log(n)
    return n * L / 4.0, L ** 3 / 24.0


def expected_moments(alpha: float, beta: float, n: int) -> tuple[float, float]:
    """Noiseless ``(C, D)`` for one sign layer with rates ``(alpha, beta)``."""
    a, b = moment_scales(n)
    return a * (alpha + beta), b * (alpha ** 3 + 3 * alpha * beta ** 2)


def solve_cubic_system(C: float, D: float, n: int) -> tuple[float, float]:
    """Real solution of ``a x + a y = C``, ``b x^3 + 3 b x y^2 = D``.

    Returns ``x = (2C/n + cbrt(6D - 8C^3/n^3)) / log n`` and
    ``y = 4C / (n log n) - x``. The cube root is the real (signed) one, so a
    negative radicand, as produced by a layer with ``y > x``, is handled.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if C < 0 or D < 0:
        raise ValueError(f"counts must be non-negative, got C={C}, D={D}")
    L = math.log(n)
    # exact on the given floats: the two terms nearly cancel when x ~ y
    radicand = float(6 * Fraction(D) - 8 * Fraction(C) ** 3 / Fraction(n) ** 3)
    x = (2.0 * C / n + float(np.cbrt(radicand))) / L
    y = 4.0 * C / (n * L) - x
    return x, y


def xi_from_rates(alpha_plus: float, beta_plus: float, alpha_minus: float, beta_minus: float) -> float:
    return math.log(beta_minus / alpha_minus) / math.log(alpha_plus / beta_plus)


def estimate_params(m: GraphMoments, n: int) -> EstimatedParams:
    """Invert observed edge/triangle counts into rate estimates and xi-hat.

    Estimates are never clamped. ``xi_hat`` is ``None`` unless all four
    estimates are positive and ``alpha_hat_plus != beta_hat_plus``;
    ``plausible`` additionally requires ``a+ > b+`` and ``b- > a-``.
    """
    ap, bp = solve_cubic_system(m.n_pos, m.t_pos, n)
    am, bm = solve_cubic_system(m.n_neg, m.t_neg, n)
    positive = min(ap, bp, am, bm) > 0
    xi = xi_from_rates(ap, bp, am, bm) if positive and ap != bp else None
    plausible = positive and ap > bp and bm > am
    return EstimatedParams(ap, bp, am, bm, xi, plausible)


def estimate_graph(g: SignedGraph) -> EstimatedParams:
    return estimate_params(count_moments(g), g.n)


def xi_exact(params: SsbmParams | tuple[float, float, float, float]) -> float:
    """Limit weight ``log(b-/a-) / log(a+/b+)`` from the true rates."""
    a_p, b_p, a_m, b_m = params.rates if isinstance(params, SsbmParams) else params
    if a_p == b_p:
        raise ValueError("xi is undefined when alpha_plus == beta_plus")
    if a_m <= 0 or b_m <= 0:
        raise ValueError("negative-layer rates must be positive")
    return xi_from_rates(a_p, b_p, a_m, b_m)


def mle_weights(params: SsbmParams | tuple[float, float, float, float], n: int | None = None) -> MleWeights:
    """Finite-n weights of the positive and negative quadratic forms in the MLE.

    ``n`` defaults to ``params.n``; pass it explicitly to evaluate the same
    rates at another size.
    """
    if isinstance(params, SsbmParams):
        a_p, b_p, a_m, b_m = params.rates
        n = params.n if n is None else n
    else:
        a_p, b_p, a_m, b_m = params
        if n is None:
            raise ValueError("n is required when rates are given as a tuple")
    L = math.log(n)
    within = n - (a_p + a_m) * L
    across = n - (b_p + b_m) * L
    if within <= 0 or across <= 0 or min(a_p, b_p, a_m, b_m) <= 0:
        raise ValueError("logarithm argument is not positive; n too small for these rates")
    mu = math.log(a_p / b_p) + math.log(across / within)
    nu = math.log(b_m / a_m) + math.log(within / across)
    return MleWeights(mu, nu)
