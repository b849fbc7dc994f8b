"""
Brute force versus phase space: the Fock-space oracle
=====================================================

"""

# Integrate the master equation on a truncated Fock space with RK4, then read
# Wigner values off the density matrix with the displaced-parity operator.
import numpy as np
from wigner_channels import (ChannelParams, Pacs, evolve_density, evolve_pacs, fock_density,
                             oracle_n_max, wigner_from_density)

points = np.array([0.0, 0.5, 1.0 + 0.5j, -1.0j])
state = Pacs(1, 1.0)

for p in [ChannelParams.damping(1.0, 0.5), ChannelParams.thermal(1.0, 0.5, 0.5),
          ChannelParams.laser(1.0, 0.4, 0.5)]:
    n_max = oracle_n_max(state, p)
    rho = evolve_density(fock_density(state, n_max), p)
    w_oracle = wigner_from_density(rho, points)
    w_kernel = evolve_pacs(1, 1.0, p, points)
    print(f"{p.kind.value:8s} n_max={n_max:3d}  "
          f"max |oracle - kernel| = {np.max(np.abs(w_oracle - w_kernel)):.2e}  "
          f"min eigenvalue = {rho.min_eigenvalue():+.1e}")
