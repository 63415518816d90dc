"""
Rectangular meshes
==================

A universal N-mode interferometer as layers of beam splitters followed by
N-1 output phases, N**2 - 1 real parameters in all.
"""

# %%
import numpy as np

from heraldgen.interferometer import (
    MeshParameterSet,
    Scheme,
    compose_mesh,
    param_count,
    rectangular_layout,
)

for n in (2, 5, 6):
    print(n, "modes:", param_count(n), "parameters, splitters on", rectangular_layout(n))

# %%
rng = np.random.default_rng(1)
p = MeshParameterSet.random(5, rng)
u = compose_mesh(p)
print("max |U^H U - I| =", np.abs(u.conj().T @ u - np.eye(5)).max())

# %%
# the same mesh as an explicit element list, which is also the JSON format
scheme = Scheme(5, tuple(p.elements()))
print(scheme.to_json()[:200], "...")
print("round trip exact:", np.array_equal(Scheme.from_json(scheme.to_json()).unitary(), scheme.unitary()))
