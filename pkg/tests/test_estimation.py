import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from signedsbm import (
    GraphMoments,
    SsbmParams,
    estimate_graph,
    estimate_params,
    mle_weights,
    sample,
    solve_cubic_system,
    xi_exact,
)
from signedsbm.estimation import expected_moments, moment_scales


def test_cubic_positive_layer_example():
    n = 1000
    L = math.log(n)
    C = 25 * n * L / 4
    D = L ** 3 * 7984 / 24
    assert 6 * D - 8 * C ** 3 / n ** 3 == pytest.approx((3.5 * L) ** 3, rel=1e-12)
    x, y = solve_cubic_system(C, D, n)
    assert x == pytest.approx(16, rel=1e-12) and y == pytest.approx(9, rel=1e-12)


def test_cubic_zero_radicand():
    n, C = 500, 1500.0
    D = 8 * C ** 3 / (6 * n ** 3)
    assert D == 36.0
    x, y = solve_cubic_system(C, D, n)
    assert x == pytest.approx(2 * C / (n * math.log(n)), rel=1e-9)
    assert y == pytest.approx(x, rel=1e-9)


def test_cubic_negative_radicand():
    n = 3000
    C, D = expected_moments(9, 16, n)
    assert 6 * D - 8 * C ** 3 / n ** 3 < 0
    x, y = solve_cubic_system(C, D, n)
    assert abs(x - 9) <= 1e-9 * 9 and abs(y - 16) <= 1e-9 * 16


def test_cubic_rejects_small_n():
    with pytest.raises(ValueError):
        solve_cubic_system(1.0, 1.0, 1)
    with pytest.raises(ValueError):
        solve_cubic_system(-1.0, 1.0, 10)


def test_cubic_satisfies_both_equations():
    n = 777
    a, b = moment_scales(n)
    C, D = expected_moments(7.5, 2.25, n)
    x, y = solve_cubic_system(C, D, n)
    assert a * x + a * y == pytest.approx(C, rel=1e-12)
    assert b * x ** 3 + 3 * b * x * y ** 2 == pytest.approx(D, rel=1e-10)


@settings(max_examples=300, deadline=None)
@given(st.floats(0.5, 30), st.floats(0.5, 30), st.integers(8, 10 ** 6))
def test_exact_inversion_property(alpha, beta, n):
    # rounding of D is amplified by the cube root when alpha ~ beta
    assume(abs(alpha - beta) >= 1e-3 * max(alpha, beta))
    x, y = solve_cubic_system(*expected_moments(alpha, beta, n), n)
    assert abs(x - alpha) <= 1e-9 * alpha
    assert abs(y - beta) <= 1e-9 * beta


@pytest.mark.parametrize("rate", [0.5, 1.0, 9.0, 30.0])
def test_inversion_equal_rates(rate):
    x, y = solve_cubic_system(*expected_moments(rate, rate, 1000), 1000)
    assert abs(x - rate) <= 1e-4 * rate and abs(y - rate) <= 1e-4 * rate


@pytest.mark.parametrize("n", [50, 300, 10 ** 5])
def test_estimate_noiseless_moments(n):
    Np, Tp = expected_moments(16, 9, n)
    Nm, Tm = expected_moments(9, 16, n)
    est = estimate_params(GraphMoments(Np, Nm, Tp, Tm), n)
    np.testing.assert_allclose(est.rates, (16, 9, 9, 16), rtol=1e-9)
    assert est.xi_hat == pytest.approx(1.0, rel=1e-9)
    assert est.plausible


def test_estimate_empty_negative_layer():
    Np, Tp = expected_moments(16, 9, 400)
    est = estimate_params(GraphMoments(Np, 0, Tp, 0), 400)
    assert est.alpha_hat_minus == 0 and est.beta_hat_minus == 0
    assert est.xi_hat is None and not est.plausible


def test_estimate_wrong_ordering_not_clamped():
    # swapped layers: estimates stay as computed, flag clears, xi still defined
    Np, Tp = expected_moments(9, 16, 1000)
    Nm, Tm = expected_moments(16, 9, 1000)
    est = estimate_params(GraphMoments(Np, Nm, Tp, Tm), 1000)
    np.testing.assert_allclose(est.rates, (9, 16, 16, 9), rtol=1e-9)
    assert not est.plausible
    assert est.xi_hat == pytest.approx(1.0, rel=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6), st.integers(0, 10 ** 7),
       st.integers(0, 10 ** 7), st.integers(4, 10 ** 5))
def test_linear_constraint_always_holds(n_pos, n_neg, t_pos, t_neg, n):
    est = estimate_params(GraphMoments(n_pos, n_neg, t_pos, t_neg), n)
    scale = 4 / (n * math.log(n))
    assert est.alpha_hat_plus + est.beta_hat_plus == pytest.approx(scale * n_pos, rel=1e-12, abs=1e-12)
    assert est.alpha_hat_minus + est.beta_hat_minus == pytest.approx(scale * n_neg, rel=1e-12, abs=1e-12)
    positive = min(est.rates) > 0 and est.alpha_hat_plus != est.beta_hat_plus
    assert (est.xi_hat is not None) == positive


def test_xi_exact_examples():
    assert xi_exact((16, 9, 9, 16)) == pytest.approx(1.0, rel=1e-15)
    e = math.e
    assert xi_exact((e, 1.0, 1.0, e ** 2)) == pytest.approx(2.0, rel=1e-14)
    ref = mpmath.log(4) / mpmath.log(mpmath.mpf(16) / 9)
    assert xi_exact((16, 9, 4, 16)) == pytest.approx(float(ref), rel=1e-14)
    assert xi_exact((16, 9, 4, 16)) == pytest.approx(2.4094, abs=1e-4)


def test_xi_exact_undefined():
    with pytest.raises(ValueError):
        xi_exact((9, 9, 4, 16))


def test_mle_weights_equal_sums():
    for n in (300, 5000):
        w = mle_weights(SsbmParams(n, 16, 9, 9, 16))
        assert w.mu_n == pytest.approx(math.log(16 / 9), rel=1e-12)
        assert w.nu_n == pytest.approx(math.log(16 / 9), rel=1e-12)
    assert math.log(16 / 9) == pytest.approx(0.5754, abs=1e-4)


def test_mle_weights_identical_communities():
    w = mle_weights((5, 5, 3, 3), 1000)
    assert w.mu_n == 0 and w.nu_n == 0


def test_mle_weights_ratio_approaches_xi():
    xi = xi_exact((16, 9, 4, 16))
    gaps = [abs(mle_weights((16, 9, 4, 16), n).nu_n / mle_weights((16, 9, 4, 16), n).mu_n - xi)
            for n in (300, 3000, 30000)]
    assert gaps[0] > gaps[1] > gaps[2]
    w = mle_weights((16, 9, 4, 16), 10 ** 6)
    assert abs(w.nu_n / w.mu_n - xi) <= 0.01


def test_mle_weights_invalid():
    with pytest.raises(ValueError):
        mle_weights((16, 9, 9, 16), 20)
    with pytest.raises(ValueError):
        mle_weights((16, 9, 9, 16))


def test_xi_hat_concentrates_at_n5000():
    close = 0
    for seed in range(20):
        g, _ = sample(SsbmParams(5000, 16, 9, 9, 16), seed)
        est = estimate_graph(g)
        close += est.xi_hat is not None and abs(est.xi_hat - 1) <= 0.3
    assert close >= 18
