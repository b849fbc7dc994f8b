"""
Photon-number distribution after loss, three ways
=================================================

"""

# p(n) from the closed-form sum, from an overlap integral of the evolved
# Wigner function, and from the diagonal of a master-equation density matrix.
import numpy as np
from wigner_channels import (ChannelParams, Pacs, evolve_density, fock_density, mean_photon,
                             oracle_n_max, pnd_evolved, pnd_from_density, pnd_pacs)

state = Pacs(2, 1.0)
p = ChannelParams.damping(1.0, 0.3)

closed = pnd_pacs(2, 1.0, p, 10)
quad = pnd_evolved(state, p, 10)
rho = evolve_density(fock_density(state, oracle_n_max(state, p)), p)
oracle = pnd_from_density(rho, 10)

print(" n   closed        quadrature    oracle")
for n in range(10):
    print(f"{n:2d}   {closed[n]:.8f}    {quad[n]:.8f}    {oracle[n]:.8f}")

# mean photon number of the evolved state
print("<n> =", mean_photon(pnd_evolved(state, p, 40)))
print("largest disagreement:", np.max(np.abs(closed.probs - oracle.probs)))
