"""
Gate-based reference
====================

Preparing the target with a CZ gate costs 1/9 at every alpha; a CPHASE(4
alpha) gate does better only below alpha = pi/12.
"""

# %%
import numpy as np

from heraldgen.schemes import analytic_p_one_mode, best_gate_based_p, cphase_p

print(f"{'alpha':>8} {'cphase':>10} {'best gate':>10} {'one-mode':>10}")
for a in np.linspace(0, np.pi / 4, 13):
    print(f"{a:8.4f} {cphase_p(4 * a):10.6f} {best_gate_based_p(a):10.6f} {analytic_p_one_mode(a):10.6f}")

# %%
print("cphase at pi/3:", cphase_p(np.pi / 3), " 1/9 =", 1 / 9)
