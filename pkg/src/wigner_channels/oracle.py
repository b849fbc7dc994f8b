"""Brute-force reference path: truncated Fock-space master equation.

The gain/loss master equation

    drho/dt = g (2 a^dag rho a - a a^dag rho - rho a a^dag)
            + k (2 a rho a^dag - a^dag a rho - rho a^dag a)

is integrated with fixed-step RK4 on dense matrices, and Wigner values are
read off with the displaced-parity operator ``D(2a) (-1)^N / pi``.  Nothing in
here uses the phase-space kernels, so it serves as an independent check on
them.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import ceil, lgamma

import numpy as np

from .errors import AccuracyError, TruncationError

HERMITIAN_TOL = 1e-12
DRIFT_TOL = 1e-5
MAX_DIM = 257


@dataclass(frozen=True)
class FockDensityMatrix:
    """Density matrix on the number states ``|0> .. |dim-1>``.

    ``tail_mass`` is the population discarded when the state was truncated,
    ``trace_drift`` the trace change accumulated by numerical evolution.
    """

    data: np.ndarray
    tail_mass: float = 0.0
    trace_drift: float = 0.0

    def __post_init__(self):
        rho = np.array(self.data, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise ValueError("density matrix must be square")
        scale = max(1.0, float(np.max(np.abs(rho))))
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL * scale:
            raise ValueError("density matrix is not Hermitian")
        rho.setflags(write=False)
        object.__setattr__(self, "data", rho)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def n_max(self) -> int:
        return self.dim - 1

    def trace(self) -> float:
        return float(np.trace(self.data).real)

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.data)[0])


def _as_array(rho) -> np.ndarray:
    return rho.data if isinstance(rho, FockDensityMatrix) else np.asarray(rho, dtype=complex)


def annihilation(dim: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1)


def lindblad_rhs(rho, params) -> np.ndarray:
    """Right-hand side of the gain/loss master equation for ``params``.

    Each dissipator is assembled as ``Y + Y^dag`` so the result is exactly
    Hermitian whenever ``rho`` is.
    """
    r = _as_array(rho)
    a = annihilation(r.shape[0])
    loss, gain = params.rates()
    return _rhs(r, a, a.T, a.T @ a, a @ a.T, loss, gain)


def _rhs(r, a, ad, n_op, anti_n, loss, gain):
    y = np.zeros_like(r)
    if loss:
        y += loss * (a @ r @ ad - n_op @ r)
    if gain:
        y += gain * (ad @ r @ a - anti_n @ r)
    return y + y.conj().T


def default_steps(params) -> int:
    """RK4 step count for ``dt = min(0.01 / rate, t / 100)``.

    ``rate`` is the total loss + gain rate, which for the plain damping
    channel is just ``kappa``.
    """
    if params.t == 0:
        return 0
    loss, gain = params.rates()
    dt = min(0.01 / (loss + gain), params.t / 100.0)
    return int(ceil(params.t / dt - 1e-9))


def evolve_density(rho0, params, steps: int | None = None) -> FockDensityMatrix:
    """Integrate ``rho0`` to time ``params.t`` with classic RK4.

    The state is re-Hermitised after every step.  Raises
    :class:`TruncationError` if the trace drifts by more than 1e-5.
    """
    r = _as_array(rho0).copy()
    tail = rho0.tail_mass if isinstance(rho0, FockDensityMatrix) else 0.0
    if steps is None:
        steps = default_steps(params)
    if params.t == 0 or steps == 0:
        return FockDensityMatrix(r, tail_mass=tail)
    if steps < 1:
        raise ValueError("steps must be positive")
    dim = r.shape[0]
    a = annihilation(dim)
    ad = a.T.copy()
    n_op = ad @ a
    anti_n = a @ ad
    loss, gain = params.rates()
    dt = params.t / steps
    tr0 = np.trace(r).real

    def f(x):
        return _rhs(x, a, ad, n_op, anti_n, loss, gain)

    for _ in range(steps):
        k1 = f(r)
        k2 = f(r + 0.5 * dt * k1)
        k3 = f(r + 0.5 * dt * k2)
        k4 = f(r + dt * k3)
        r = r + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        r = 0.5 * (r + r.conj().T)
    drift = abs(np.trace(r).real - tr0)
    if drift > DRIFT_TOL:
        raise TruncationError(
            f"trace drifted by {drift:.3e} over {steps} steps (dim={dim}); "
            "raise n_max or the step count"
        )
    return FockDensityMatrix(r, tail_mass=tail, trace_drift=drift)


def displacement_elements(beta, dim: int) -> np.ndarray:
    """Matrix elements ``<m|D(beta)|n>`` for ``m, n < dim``.

    Returns an array of shape ``beta.shape + (dim, dim)``.  Uses the
    associated-Laguerre closed form with log-space prefactors.
    """
    beta = np.asarray(beta, dtype=complex)
    x = np.abs(beta) ** 2
    mag = np.abs(beta)
    # unit phase of beta; arbitrary (=1) at the origin where only k=0 survives
    phase = np.where(mag > 0, beta / np.where(mag > 0, mag, 1.0), 1.0)
    logmag = np.log(np.where(mag > 0, mag, 1.0))
    out = np.zeros(beta.shape + (dim, dim), dtype=complex)
    for k in range(dim):
        count = dim - k
        lag = np.empty((count,) + x.shape)
        lag[0] = 1.0
        if count > 1:
            lag[1] = 1.0 + k - x
        for n in range(1, count - 1):
            lag[n + 1] = ((2 * n + 1 + k - x) * lag[n] - (n + k) * lag[n - 1]) / (n + 1)
        for n in range(count):
            if k > 0:
                pre = np.where(
                    mag > 0,
                    np.exp(0.5 * (lgamma(n + 1) - lgamma(n + k + 1)) + k * logmag - 0.5 * x),
                    0.0,
                )
            else:
                pre = np.exp(-0.5 * x)
            val = pre * lag[n]
            out[..., n + k, n] = val * phase**k
            if k > 0:
                out[..., n, n + k] = val * (-np.conj(phase)) ** k
    return out


def wigner_from_density(rho, alpha):
    """Wigner value ``Tr[D(2a) (-1)^N rho] / pi`` (integrates to 1/2)."""
    r = _as_array(rho)
    alpha = np.asarray(alpha, dtype=complex)
    dim = r.shape[0]
    flat = alpha.ravel()
    parity = (-1.0) ** np.arange(dim)
    # Tr[D P rho] = sum_{m,n} D_mn (-1)^n rho_nm
    weighted = (parity[:, None] * r).T
    out = np.empty(flat.shape, dtype=complex)
    chunk = max(1, 200_000 // (dim * dim))
    for s in range(0, flat.size, chunk):
        d = displacement_elements(2.0 * flat[s:s + chunk], dim)
        out[s:s + chunk] = np.einsum("kmn,mn->k", d, weighted) / np.pi
    if np.max(np.abs(out.imag), initial=0.0) > 1e-10:
        raise AccuracyError(
            f"Wigner value has imaginary residue {np.max(np.abs(out.imag)):.2e}"
        )
    top = float(np.sum(np.diag(r).real[-4:]))
    if top > 1e-10 and np.max(4 * np.abs(flat) ** 2, initial=0.0) > dim - 1:
        warnings.warn(
            f"population {top:.1e} near the Fock cutoff; Wigner values at "
            "|2 alpha|^2 > n_max may be truncation-limited",
            stacklevel=2,
        )
    return out.real.reshape(alpha.shape)[()]


def pnd_from_density(rho, n_cut: int | None = None):
    """Photon-number distribution ``p(n) = <n|rho|n>``."""
    from .photon import PhotonNumberDistribution

    r = _as_array(rho)
    diag = np.clip(np.diag(r).real, 0.0, None)
    if n_cut is None:
        n_cut = r.shape[0]
    probs = np.zeros(n_cut)
    kept = min(n_cut, r.shape[0])
    probs[:kept] = diag[:kept]
    tail = max(0.0, 1.0 - float(probs.sum()))
    return PhotonNumberDistribution(probs, tail_bound=tail)


def oracle_n_max(spec, params) -> int:
    """Fock cutoff for evolving ``spec`` through ``params``.

    The initial-state heuristic plus 8, widened for the thermal steady state
    the channel relaxes towards, and inflated by ``exp(2 (g-k) t)`` under net
    gain.  Refuses (``TruncationError``) beyond 256.
    """
    from .states import Thermal, default_n_max

    n_max = default_n_max(spec) + 8
    loss, gain = params.rates()
    if gain > 0 and loss > gain:
        n_max = max(n_max, default_n_max(Thermal(gain / (loss - gain))) + 8)
    if gain > loss:
        n_max = int(ceil(n_max * np.exp(2.0 * (gain - loss) * params.t)))
    if n_max + 1 > MAX_DIM:
        raise TruncationError(
            f"oracle would need n_max={n_max} (> {MAX_DIM - 1}); refusing amplification run"
        )
    return n_max
