"""
How the running time grows with n
=================================

Estimation costs one triangle count per layer; solving costs a few sparse
products. Both scale with the number of edges, which is about n log n here,
so quadrupling n should cost well under 16x.
"""

import math

from signedsbm.experiments import run_bench

sizes = [2500, 5000, 10000, 20000]
rows = run_bench(sizes, (16, 9, 9, 16), trials=3, seed=0)

print(f"{'n':>7} {'estimate ms':>12} {'solve ms':>10} {'+gen ms':>10} {'gpi iters':>10} {'exact':>6}")
for r in rows:
    print(f"{r['n']:7d} {r['total_estimate_ms']:12.1f} {r['total_solve_ms']:10.1f} "
          f"{r['total_with_generation_ms']:10.1f} {r['mean_gpi_iters']:10.2f} {r['recovered']:4d}/{r['trials']}")

# %%
# Compare the measured growth with n log^2 n / log log n.
def model(n):
    L = math.log(n)
    return n * L * L / math.log(L)


t = [r["total_estimate_ms"] + r["total_solve_ms"] for r in rows]
for (n0, t0), (n1, t1) in zip(zip(sizes, t), zip(sizes[1:], t[1:])):
    print(f"n {n0} -> {n1}: measured x{t1 / t0:.2f}, model x{model(n1) / model(n0):.2f}")
