"""
When does a thermal bath wash out the negativity?
=================================================

"""

# The threshold kappa t_c depends only on the bath occupation.
import numpy as np
from wigner_channels import positivity_time
from wigner_channels.verify import positivity_grid_min

for nbar in [0.0, 0.1, 0.5, 1.0, 5.0]:
    tc = positivity_time(nbar)
    # minimum of the evolved state on a 41x41 grid, before and after t_c
    before = positivity_grid_min(1, 1.0, nbar, 0.5 * tc)
    after = positivity_grid_min(1, 1.0, nbar, tc)
    print(f"nbar = {nbar:4.1f}  kappa t_c = {tc:.6f}  "
          f"min W(0.5 t_c) = {before:+.2e}  min W(t_c) = {after:+.2e}")

# a hotter bath always destroys the negativity sooner
print(np.all(np.diff([positivity_time(n) for n in np.linspace(0, 10, 50)]) < 0))
