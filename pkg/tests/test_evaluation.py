import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from signedsbm import (
    SignedGraph,
    SolverConfig,
    SsbmParams,
    brute_force_mle,
    compare,
    mle_objective,
    mle_weights,
    objective,
    sample,
    sample_raw,
    solve,
    xi_exact,
)
from signedsbm.evaluation import n_balanced_partitions

from conftest import dense_layers, dense_w, random_graph


def test_compare_examples():
    t = np.array([1, 1, -1, -1])
    assert compare(t, t) == compare(-t, t)
    assert compare(-t, t).exact and compare(-t, t).misclassified == 0
    m = compare([1, -1, -1, -1], t)
    assert (m.exact, m.misclassified, m.error_rate) == (False, 1, 0.25)
    truth = np.repeat([1, -1], 5)
    x = truth.copy()
    x[[0, 4, 7]] *= -1
    assert compare(x, truth).error_rate == pytest.approx(0.3)
    with pytest.raises(ValueError):
        compare([1, -1], t)


@settings(max_examples=50)
@given(st.lists(st.sampled_from([1, -1]), min_size=2, max_size=40), st.integers(0, 1000))
def test_compare_symmetric_and_bounded(x, seed):
    x = np.array(x)
    t = np.where(np.random.default_rng(seed).random(x.size) < 0.5, 1, -1)
    assert compare(x, t) == compare(t, x) == compare(-x, t)
    assert compare(x, t).misclassified <= x.size // 2


def test_objective_noiseless(noiseless4):
    g, x = noiseless4
    assert objective(g, 1.0, x) == 12.0
    assert objective(g, 1.0, np.ones(4)) == 0.0
    with pytest.raises(ValueError):
        objective(g, float("nan"), x)
    with pytest.raises(ValueError):
        objective(g, 1.0, x[:3])


@pytest.mark.parametrize("seed", range(5))
def test_objective_matches_dense(seed):
    g = random_graph(12, seed)
    xi = 0.5 + seed
    x = np.where(np.random.default_rng(seed).random(12) < 0.5, 1, -1)
    expected = x @ dense_w(g, xi) @ x
    assert objective(g, xi, x) == pytest.approx(expected, rel=1e-12, abs=1e-9)
    assert objective(g, xi, x) == pytest.approx(objective(g, xi, -x), rel=1e-15)


def test_mle_objective_matches_dense():
    g = random_graph(10, 2)
    ap, an = dense_layers(g)
    x = np.repeat([1, -1], 5)
    assert mle_objective(g, 0.7, 1.9, x) == pytest.approx(x @ (0.7 * ap - 1.9 * an) @ x)


def test_brute_force_noiseless(noiseless4):
    g, x = noiseless4
    np.testing.assert_array_equal(brute_force_mle(g, 1.0, 1.0), x)


def test_brute_force_tie_break_on_empty_graph():
    np.testing.assert_array_equal(brute_force_mle(SignedGraph.empty(4), 1.0, 1.0), [1, -1, -1, 1])


def test_brute_force_limits():
    with pytest.raises(ValueError):
        brute_force_mle(SignedGraph.empty(5), 1.0, 1.0)
    with pytest.raises(ValueError):
        brute_force_mle(SignedGraph.empty(22), 1.0, 1.0)


def test_brute_force_matches_naive_enumeration():
    g = random_graph(8, 11)
    ap, an = dense_layers(g)
    M = 1.3 * ap - 0.4 * an
    best = max(
        (np.array(x) @ M @ np.array(x), x)
        for x in itertools.product([1, -1], repeat=8)
        if sum(x) == 0 and x[0] == 1
    )
    x = brute_force_mle(g, 1.3, 0.4)
    assert x @ M @ x == pytest.approx(best[0])


def test_n_balanced_partitions():
    assert n_balanced_partitions(4) == 3
    assert n_balanced_partitions(20) == math.comb(20, 10) // 2


def test_brute_force_agrees_with_solver_at_n10():
    rates = (4.2, 0.05, 0.05, 4.2)
    w = mle_weights(SsbmParams(10, *rates))
    agree = 0
    for seed in range(20):
        g, truth = sample(SsbmParams(10, *rates), seed)
        res = solve(g, SolverConfig(xi=xi_exact(rates), seed=seed))
        agree += compare(res.labels, brute_force_mle(g, w.mu_n, w.nu_n)).exact
    assert agree == 20


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([6, 8, 10, 12]), st.integers(0, 2 ** 31))
def test_balanced_solver_output_is_optimal_under_strong_signal(n, seed):
    g, _ = sample_raw(n, 0.95, 0.0, 0.0, 0.95, seed)
    res = solve(g, SolverConfig(xi=1.0, seed=seed))
    if res.labels.sum() != 0:
        return
    best = brute_force_mle(g, 1.0, 1.0)
    assert objective(g, 1.0, res.labels) == pytest.approx(objective(g, 1.0, best), abs=1e-9)
