"""
Negativity of a photon-added coherent state under photon loss
=============================================================

"""

# A photon-added coherent state has a negative dip in its Wigner function.
# Photon loss blurs the dip away; here we watch the minimum over a grid.
import numpy as np
from wigner_channels import ChannelParams, Pacs, evolve_pacs_damping, evolve_wigner

xs = np.linspace(-3, 3, 61)
grid = xs[None, :] + 1j * xs[:, None]

# closed form on the full grid, for a handful of times
for kt in [0.0, 0.1, 0.2, 0.3, np.log(2) / 2, 0.5]:
    w = evolve_pacs_damping(1, 1.0, 1.0, kt, grid)
    print(f"kappa t = {kt:.4f}   min W = {w.min():+.6f}")

# the same numbers straight from the phase-space kernel by quadrature
p = ChannelParams.damping(1.0, 0.2)
probe = np.array([0.0, 0.25, 0.5 + 0.5j])
print("closed    ", evolve_pacs_damping(1, 1.0, 1.0, 0.2, probe))
print("quadrature", evolve_wigner(Pacs(1, 1.0), p, probe))
