"""Stable subordinators and the dimension-halving of their images.

Two independent routes to the index-1/2 subordinator: first-passage times
read off a single Brownian path, and exact one-sided stable increments.
Images of a set of dimension d have dimension alpha * d; the demo checks
the halving on the middle-thirds set and compares the two samplers.
"""

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from slelab.boxcount import WindowPolicy, box_dimension_1d
from slelab.cantor import discretize, exact_dimension, middle_thirds
from slelab.stochastic import (
    hitting_time_subordinator,
    stable_subordinator,
    standard_stable_increments,
)

spec = middle_thirds()
grid = discretize(spec, 10)
policy = WindowPolicy.for_samples()

path = hitting_time_subordinator(grid, seed=5, dt=3e-7, max_time=200.0)
image = np.unique(path.values)
est = box_dimension_1d(image, window_policy=policy).slope
print(f"hitting-time route: image dimension {est:.4f} "
      f"(target {0.5 * exact_dimension(spec):.4f})")

path2 = stable_subordinator(0.5, grid[grid > 0], seed=5)
image2 = np.unique(np.concatenate([[0.0], path2.values]))
est2 = box_dimension_1d(image2, window_policy=policy).slope
print(f"exact stable route:  image dimension {est2:.4f}")

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 4.2))
ax1.step(path.grid, path.values, where="post", lw=0.8)
ax1.set_xlabel("level r")
ax1.set_ylabel("first passage time S(r)")
ax1.set_title("index-1/2 subordinator on the Cantor grid")

# marginal comparison: first passage of level 1 vs 2x standard stable(1/2)
hits = []
for s in range(400):
    try:
        hits.append(hitting_time_subordinator([1.0], seed=s, dt=4e-4, max_time=50.0).values[-1])
    except Exception:
        pass
rng = np.random.default_rng(0)
std = 2.0 * standard_stable_increments(0.5, 4000, rng)
bins = np.logspace(-1.5, 1.7, 40)
ax2.hist(np.clip(hits, bins[0], bins[-1]), bins=bins, density=True, alpha=0.5,
         label="Brownian first passage")
ax2.hist(np.clip(std[std < 50], bins[0], bins[-1]), bins=bins, density=True, alpha=0.5,
         label="2 x standard stable(1/2)")
ax2.set_xscale("log")
ax2.set_xlabel("S(1)")
ax2.set_title("matching marginals, independent samplers")
ax2.legend(fontsize=8)

fig.tight_layout()
fig.savefig("demos/output_subordinators.png", dpi=120)
print("wrote demos/output_subordinators.png")
