"""
Photons through beam splitters
==============================

Amplitudes of multi-photon Fock states are permanents of sub-matrices of the
interferometer's transfer matrix.
"""

# %%
import math

import numpy as np

from heraldgen.fock import enumerate_basis, evolve, permanent, permanent_naive
from heraldgen.interferometer import beam_splitter

# the basis is listed in lexicographic descending order
print(enumerate_basis(3, 2))
print(len(enumerate_basis(6, 4)), "states for four photons in six modes")

# %%
# Ryser's formula agrees with the plain sum over permutations
rng = np.random.default_rng(0)
a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
print(permanent(a), permanent_naive(a))

# %%
# Hong-Ou-Mandel: two photons on a balanced splitter leave together
bs = beam_splitter(math.pi / 4, 0.0)
psi = evolve((1, 1), bs)
for occ, c in psi.as_dict(1e-12).items():
    print(occ, np.round(c, 6))
print("coincidence amplitude", abs(psi.amplitude((1, 1))))
