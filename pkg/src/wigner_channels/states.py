"""Initial states: phase-space Wigner functions and truncated Fock matrices.

Wigner functions follow the convention ``W(a) = Tr[D(2a) (-1)^N rho] / pi``,
which integrates to 1/2 over the plane (vacuum peak ``1/pi``).  Multiply by
two for the usual unit-normalised function.

Phase-space points are plain complex numbers (or complex arrays).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import ceil, exp, lgamma, log, sqrt

import numpy as np

from .errors import TruncationError
from .oracle import FockDensityMatrix
from .special import laguerre

MAX_N = 64
MAX_M = 30
TAIL_TOL = 1e-10


@dataclass(frozen=True)
class Number:
    """Fock state ``|n>``."""

    n: int

    def __post_init__(self):
        if not 0 <= int(self.n) <= MAX_N:
            raise ValueError(f"number state n must lie in [0, {MAX_N}]")
        object.__setattr__(self, "n", int(self.n))

    def wigner(self, alpha):
        return wigner_number(self.n, alpha)

    def envelope(self):
        return 0j, 2.0, self.n

    def mean_photon(self) -> float:
        return float(self.n)


@dataclass(frozen=True)
class Coherent:
    """Coherent state ``|z>``."""

    z: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))

    def wigner(self, alpha):
        return wigner_coherent(self.z, alpha)

    def envelope(self):
        return self.z, 2.0, 0

    def mean_photon(self) -> float:
        return abs(self.z) ** 2


@dataclass(frozen=True)
class Pacs:
    """Photon-added coherent state ``a^dag^m |z>`` (normalised)."""

    m: int
    z: complex

    def __post_init__(self):
        if not 0 <= int(self.m) <= MAX_M:
            raise ValueError(f"photon-added order m must lie in [0, {MAX_M}]")
        object.__setattr__(self, "m", int(self.m))
        object.__setattr__(self, "z", complex(self.z))

    def wigner(self, alpha):
        return wigner_pacs(self.m, self.z, alpha)

    def envelope(self):
        return self.z, 2.0, self.m

    def mean_photon(self) -> float:
        # <a a^dag> over the state is the ratio of successive norms.
        x = -abs(self.z) ** 2
        return (self.m + 1) * float(laguerre(self.m + 1, x)) / float(laguerre(self.m, x)) - 1.0


@dataclass(frozen=True)
class Thermal:
    """Thermal (Bose-Einstein) state with mean occupation ``nbar``."""

    nbar: float

    def __post_init__(self):
        if not (self.nbar >= 0 and np.isfinite(self.nbar)):
            raise ValueError("thermal nbar must be finite and >= 0")
        object.__setattr__(self, "nbar", float(self.nbar))

    def wigner(self, alpha):
        return wigner_thermal(self.nbar, alpha)

    def envelope(self):
        return 0j, 2.0 / (2.0 * self.nbar + 1.0), 0

    def mean_photon(self) -> float:
        return self.nbar


StateSpec = Number | Coherent | Pacs | Thermal


def wigner_number(n: int, alpha):
    """``(-1)^n exp(-2|a|^2) L_n(4|a|^2) / pi``."""
    r2 = np.abs(np.asarray(alpha)) ** 2
    return (-1) ** n / np.pi * np.exp(-2.0 * r2) * laguerre(n, 4.0 * r2)


def wigner_coherent(z: complex, alpha):
    return np.exp(-2.0 * np.abs(np.asarray(alpha) - z) ** 2) / np.pi


def wigner_pacs(m: int, z: complex, alpha):
    """Photon-added coherent state.

    ``(-1)^m exp(-2|a-z|^2) L_m(|2a-z|^2) / (pi L_m(-|z|^2))``
    """
    alpha = np.asarray(alpha)
    norm = float(laguerre(m, -abs(z) ** 2))
    return ((-1) ** m / (np.pi * norm) * np.exp(-2.0 * np.abs(alpha - z) ** 2)
            * laguerre(m, np.abs(2.0 * alpha - z) ** 2))


def wigner_thermal(nbar: float, alpha):
    s = 2.0 * nbar + 1.0
    return np.exp(-2.0 * np.abs(np.asarray(alpha)) ** 2 / s) / (np.pi * s)


def wigner(spec: StateSpec, alpha):
    """Wigner function of any supported initial state."""
    return spec.wigner(alpha)


def default_n_max(spec: StateSpec) -> int:
    """Fock cutoff heuristic ``ceil(|z|^2 + m + 8 sqrt(|z|^2 + m + 1))``, at least 16.

    Thermal states use the geometric tail instead, since their tail decays
    only like ``(nbar/(nbar+1))^n``.
    """
    if isinstance(spec, Thermal):
        if spec.nbar == 0:
            return 16
        ratio = spec.nbar / (spec.nbar + 1.0)
        return max(16, ceil(log(TAIL_TOL * 1e-2) / log(ratio)))
    z2 = abs(getattr(spec, "z", 0.0)) ** 2
    m = getattr(spec, "m", getattr(spec, "n", 0))
    return max(16, ceil(z2 + m + 8.0 * sqrt(z2 + m + 1.0)))


def _pacs_amplitudes(m: int, z: complex, n_max: int) -> np.ndarray:
    """Unnormalised amplitudes of ``a^dag^m |z>`` on ``|0>..|n_max>``."""
    amp = np.zeros(n_max + 1, dtype=complex)
    if z == 0:
        if m <= n_max:
            amp[m] = sqrt(float(np.prod(np.arange(1, m + 1, dtype=float))))
        return amp
    r2 = abs(z) ** 2
    phase = z / abs(z)
    for k in range(m, n_max + 1):
        j = k - m
        logmag = 0.5 * lgamma(k + 1) - lgamma(j + 1) - 0.5 * r2 + j * log(abs(z))
        amp[k] = exp(logmag) * phase**j
    return amp


def fock_density(spec: StateSpec, n_max: int | None = None) -> FockDensityMatrix:
    """Truncated density matrix on ``|0>..|n_max>``.

    The kept block is renormalised to unit trace; the discarded population is
    recorded as ``tail_mass``.  Raises :class:`TruncationError` if that tail
    exceeds 1e-10.
    """
    if n_max is None:
        n_max = default_n_max(spec)
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    dim = n_max + 1
    if isinstance(spec, Number):
        if spec.n > n_max:
            raise TruncationError(f"|{spec.n}> lies beyond n_max={n_max}", tail_mass=1.0)
        rho = np.zeros((dim, dim), dtype=complex)
        rho[spec.n, spec.n] = 1.0
        return FockDensityMatrix(rho, tail_mass=0.0)
    if isinstance(spec, Thermal):
        k = np.arange(dim)
        p = (spec.nbar**k / (spec.nbar + 1.0) ** (k + 1)) if spec.nbar > 0 else (k == 0) * 1.0
        tail = (spec.nbar / (spec.nbar + 1.0)) ** dim
        _check_tail(tail, n_max)
        return FockDensityMatrix(np.diag(p / p.sum()).astype(complex), tail_mass=tail)
    if isinstance(spec, Coherent):
        m, z = 0, spec.z
    else:
        m, z = spec.m, spec.z
    amp = _pacs_amplitudes(m, z, n_max)
    # m! L_m(-|z|^2) is the exact squared norm of a^dag^m |z>.
    exact_norm = float(np.prod(np.arange(1, m + 1, dtype=float))) * float(laguerre(m, -abs(z) ** 2))
    kept = float(np.sum(np.abs(amp) ** 2))
    tail = max(0.0, 1.0 - kept / exact_norm)
    _check_tail(tail, n_max)
    psi = amp / sqrt(kept)
    return FockDensityMatrix(np.outer(psi, psi.conj()), tail_mass=tail)


def _check_tail(tail: float, n_max: int) -> None:
    if tail > TAIL_TOL:
        raise TruncationError(
            f"n_max={n_max} discards population {tail:.3e} (> {TAIL_TOL:g})", tail_mass=tail
        )
