"""
Where two-mode heralding takes over
===================================

Optimized success probability over a grid of targets for both heralds, and
the point where the curves cross. Writes crossover.csv next to this script.
"""

# %%
import csv
from pathlib import Path

import numpy as np

from heraldgen.heralding import HeraldSpec
from heraldgen.optimize import sweep_universal
from heraldgen.schemes import best_gate_based_p

grid = np.round(np.arange(1, 40, 2) * 0.02, 12)
one = sweep_universal(grid, HeraldSpec.one_mode(), n_restarts=5, seed=0)
two = sweep_universal(grid, HeraldSpec.two_mode(), n_restarts=5, seed=0)

# %%
print(f"{'alpha':>6} {'one-mode':>10} {'two-mode':>10} {'gate':>8}")
for a, o, t in zip(grid, one, two):
    print(f"{a:6.2f} {o.probability:10.6f} {t.probability:10.6f} {best_gate_based_p(a):8.5f}")

diff = np.array([t.probability - o.probability for o, t in zip(one, two)])
i = int(np.argmax(diff < 0))
# linear interpolation between the bracketing grid points
cross = grid[i - 1] + (grid[i] - grid[i - 1]) * diff[i - 1] / (diff[i - 1] - diff[i])
print(f"curves cross near alpha = {cross:.3f}")

# %%
out = Path(__file__).with_name("crossover.csv")
with open(out, "w", newline="") as fh:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["alpha", "p_one_mode", "p_two_mode"])
    for a, o, t in zip(grid, one, two):
        w.writerow([f"{a:.12g}", f"{o.probability:.12g}", f"{t.probability:.12g}"])
print("wrote", out)
