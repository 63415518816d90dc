"""
The compact one-mode-heralded scheme
====================================

Four static beam splitters, one static phase and one programmable splitter
with tau(alpha) = 1/(1 + 2 tan(alpha)**2) produce
cos(alpha)|1010> + sin(alpha)|0101> whenever two photons land in the herald
mode, with probability 1/(6 (1 + sin(alpha)**2)).
"""

# %%
import numpy as np

from heraldgen.schemes import (
    COMPACT_HERALD,
    COMPACT_INPUT,
    analytic_p_one_mode,
    compact_scheme,
    compact_scheme_outcome,
    tau_of_alpha,
)

print("input", COMPACT_INPUT, "herald", COMPACT_HERALD)
for el in compact_scheme(0.3).elements:
    print("  ", el)

# %%
print(f"{'alpha':>8} {'tau':>8} {'p sim':>12} {'p formula':>12} {'1-F':>10}")
for a in np.linspace(0, np.pi / 4, 9):
    out = compact_scheme_outcome(a)
    print(f"{a:8.4f} {tau_of_alpha(a):8.4f} {out.p_tilde:12.9f} {analytic_p_one_mode(a):12.9f} "
          f"{out.infidelity:10.1e}")

# %%
# the heralded state at alpha = pi/8, normalized
out = compact_scheme_outcome(np.pi / 8)
for occ, c in out.chi.as_dict(1e-12).items():
    print(occ, np.round(c / np.sqrt(out.p_tilde), 6))
