"""Wigner-function and photon-number evolution through damping, thermal and
laser channels, with a truncated Fock-space master-equation cross-check."""

__version__ = "0.1.0"

from .errors import AccuracyError, QuadratureError, TruncationError
from .evolution import (Channel, ChannelParams, KernelFactors, evolve_closed, evolve_pacs,
                        evolve_pacs_damping, evolve_pacs_thermal, evolve_wigner,
                        evolved_envelope, kernel_factors, positivity_time)
from .oracle import (FockDensityMatrix, evolve_density, lindblad_rhs, oracle_n_max,
                     pnd_from_density, wigner_from_density)
from .photon import (PhotonNumberDistribution, PndFactors, mean_photon, pnd_evolved,
                     pnd_factors, pnd_overlap, pnd_pacs, pnd_pacs_closed)
from .special import (QuadratureRule, assoc_laguerre, hermite2, integrate_2d, laguerre,
                      laguerre_scaled)
from .states import (Coherent, Number, Pacs, StateSpec, Thermal, default_n_max, fock_density,
                     wigner, wigner_coherent, wigner_number, wigner_pacs, wigner_thermal)

__all__ = [
    "AccuracyError", "QuadratureError", "TruncationError",
    "Channel", "ChannelParams", "KernelFactors", "evolve_closed", "evolve_pacs",
    "evolve_pacs_damping", "evolve_pacs_thermal", "evolve_wigner", "evolved_envelope",
    "kernel_factors", "positivity_time",
    "FockDensityMatrix", "evolve_density", "lindblad_rhs", "oracle_n_max",
    "pnd_from_density", "wigner_from_density",
    "PhotonNumberDistribution", "PndFactors", "mean_photon", "pnd_evolved", "pnd_factors",
    "pnd_overlap", "pnd_pacs", "pnd_pacs_closed",
    "QuadratureRule", "assoc_laguerre", "hermite2", "integrate_2d", "laguerre",
    "laguerre_scaled",
    "Coherent", "Number", "Pacs", "StateSpec", "Thermal", "default_n_max", "fock_density",
    "wigner", "wigner_coherent", "wigner_number", "wigner_pacs", "wigner_thermal",
]
