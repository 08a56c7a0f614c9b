"""
Sampling a signed graph and estimating its parameters
=====================================================

Draw one graph from the two-community signed model, count its edges and
triangles per sign, and invert those counts into rate estimates.
"""

import numpy as np

from signedsbm import SsbmParams, count_moments, estimate_graph, it_gap, sample, xi_exact

# Rates are per log(n)/n: within-community positive / across positive,
# within negative / across negative.
params = SsbmParams(n=4000, alpha_plus=16, beta_plus=9, alpha_minus=1, beta_minus=9)
print("edge probabilities (p+, p-, q+, q-):", np.round(params.probabilities, 5))
print("IT gap:", it_gap(params))  # >= 0 means exact recovery is possible

graph, truth = sample(params, seed=1)
print(f"n={graph.n}  positive edges={graph.n_pos}  negative edges={graph.n_neg}")

# labels are fixed: first half +1, second half -1
print("community sizes:", np.bincount((truth.labels + 1) // 2))

# %%
# Edge and triangle counts of each layer are all the estimator needs.
m = count_moments(graph)
print("moments:", m)

est = estimate_graph(graph)
for name, true, hat in zip(("alpha+", "beta+", "alpha-", "beta-"), params.rates, est.rates):
    print(f"  {name:7s} true {true:5.2f}   estimated {hat:6.3f}")

# The weight on negative edges, from true and from estimated rates.
print("xi exact    :", round(xi_exact(params), 4))
print("xi estimated:", None if est.xi_hat is None else round(est.xi_hat, 4))
print("estimates ordered like the model (alpha+ > beta+, beta- > alpha-):", est.plausible)

# %%
# Repeat over a few seeds to see the spread of xi_hat.
xis = np.array([estimate_graph(sample(params, s)[0]).xi_hat for s in range(10)])
print(f"xi_hat over 10 graphs: mean {xis.mean():.3f}, sd {xis.std(ddof=1):.3f}")
