"""
Searching for the best Bell-state generator
===========================================

Multi-start L-BFGS over all N**2 - 1 mesh parameters, with the probability
exponent annealed towards zero so that fidelity comes first.
"""

# %%
import math

from heraldgen.heralding import HeraldSpec
from heraldgen.interferometer import MeshParameterSet, Scheme
from heraldgen.optimize import optimize_universal

one = optimize_universal(math.pi / 4, HeraldSpec.one_mode(), n_restarts=10, seed=0)
print(f"one-mode herald: p = {one.p:.8f} (1/9 = {1 / 9:.8f}), 1-F = {one.infidelity:.1e}")

two = optimize_universal(math.pi / 4, HeraldSpec.two_mode(), n_restarts=10, seed=0)
print(f"two-mode herald: p = {two.p:.8f} (2/27 = {2 / 27:.8f}), 1-F = {two.infidelity:.1e}")

# %%
# the result as an element list that can be saved and reloaded
scheme = Scheme(6, tuple(MeshParameterSet.from_vector(6, two.best_params).elements()))
print(len(scheme.elements), "elements;", scheme.to_json()[:120], "...")

# %%
# weakly entangled targets favour two-mode heralding
for a in (0.05, 0.02):
    r1 = optimize_universal(a, HeraldSpec.one_mode(), n_restarts=5, seed=0)
    r2 = optimize_universal(a, HeraldSpec.two_mode(), n_restarts=5, seed=0)
    print(f"alpha {a}: one-mode p = {r1.p:.6f}, two-mode p = {r2.p:.6f} (1-F {r2.infidelity:.1e})")
