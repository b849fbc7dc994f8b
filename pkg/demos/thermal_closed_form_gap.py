"""
Checking a literature thermal-bath formula against the kernel
=============================================================

"""

# The thermal-bath closed form for a photon-added coherent state agrees with
# the damping result when nbar = 0.  For nbar > 0 its Gaussian exponent
# departs from a direct convolution with the channel kernel.
import numpy as np
from wigner_channels import ChannelParams, Pacs, evolve_pacs, evolve_pacs_thermal, evolve_wigner

xs = np.linspace(-2, 2, 5)
points = (xs[None, :] + 1j * xs[:, None]).ravel()

for nbar in [0.0, 0.1, 0.5, 1.0]:
    p = ChannelParams.thermal(1.0, nbar, 1.0)
    quad = evolve_wigner(Pacs(1, 1.0), p, points)
    lit = evolve_pacs_thermal(1, 1.0, 1.0, nbar, 1.0, points)
    conv = evolve_pacs(1, 1.0, p, points)
    print(f"nbar = {nbar:.1f}   literature form: {np.max(np.abs(lit - quad)):.2e}   "
          f"convolution form: {np.max(np.abs(conv - quad)):.2e}")

# the full cross-validation report, as produced by `wigner-channels verify`
from wigner_channels.verify import run_verify

report = run_verify(quick=True)
print(report["eq412_status"], report["eq412_max_deviation"])
