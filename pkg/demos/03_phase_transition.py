"""
Exact recovery across the threshold
===================================

A small version of the recovery heatmap: fix the positive rates, sweep the
two negative rates, and print the fraction of trials recovered exactly next
to the IT gap. The full grid (step 0.5 over [1, 10], 40 trials) runs the same
way through ``signedsbm sweep`` and takes on the order of an hour.
"""

import numpy as np

from signedsbm.experiments import SweepSpec, run_sweep

spec = SweepSpec(
    n=300,
    trials=10,
    fixed={"alpha_plus": 16.0, "beta_plus": 9.0},
    sweep_x=("alpha_minus", 1.0, 10.0, 3.0),
    sweep_y=("beta_minus", 1.0, 10.0, 3.0),
    xi_mode="exact",
    base_seed=0,
)
rows = run_sweep(spec)

xs = sorted({r["alpha_minus"] for r in rows})
ys = sorted({r["beta_minus"] for r in rows})
ratio = np.full((len(xs), len(ys)), np.nan)
gap = np.zeros_like(ratio)
for r in rows:
    i, j = xs.index(r["alpha_minus"]), ys.index(r["beta_minus"])
    ratio[i, j] = r.get("recovery_ratio", np.nan)
    gap[i, j] = r["it_gap"]

print("recovery ratio (rows alpha-, columns beta-)")
print("       " + "".join(f"{y:8.1f}" for y in ys))
for i, x in enumerate(xs):
    print(f"{x:6.1f} " + "".join(f"{v:8.2f}" for v in ratio[i]))

print("\nIT gap")
for i, x in enumerate(xs):
    print(f"{x:6.1f} " + "".join(f"{v:8.2f}" for v in gap[i]))

# %%
# The boundary is the circle (sqrt(a-) - sqrt(b-))^2 = 2 - (4 - 3)^2 = 1.
above = ratio[gap >= 1].mean()
below = ratio[gap <= -1].mean() if (gap <= -1).any() else float("nan")
print(f"\nmean ratio with gap >= 1: {above:.2f}; with gap <= -1: {below:.2f}")
