"""Photon-number distributions from Wigner functions.

Three routes are provided:

* :func:`pnd_overlap` -- ``p(n) = 4 pi int W_n(a) W(a) d^2a`` for any Wigner
  function (the factor 4 pi matches the 1/2-normalised convention);
* :func:`pnd_evolved` -- the channel-evolved distribution as a single
  integral over the *initial* Wigner function;
* :func:`pnd_pacs_closed` -- closed-form double sum for photon-added coherent
  states.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from math import ceil, exp, lgamma, log, sqrt

import numpy as np

from .errors import AccuracyError, QuadratureError
from .evolution import Channel, ChannelParams, kernel_factors
from .special import (QuadratureRule, hermite2, laguerre, laguerre_scaled_all)

PROB_EPS = 1e-9


@dataclass(frozen=True)
class PhotonNumberDistribution:
    """``probs[n]`` for ``n < n_cut`` plus an estimate of the mass beyond."""

    probs: np.ndarray
    tail_bound: float = 0.0
    n_cut: int = field(init=False)

    def __post_init__(self):
        p = np.array(self.probs, dtype=float)
        if np.any(p < -PROB_EPS) or np.any(p > 1.0 + PROB_EPS):
            raise AccuracyError(
                f"probabilities outside [0, 1] beyond {PROB_EPS:g}: "
                f"min {p.min():.3e}, max {p.max():.3e}"
            )
        p = np.clip(p, 0.0, 1.0)
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "n_cut", p.size)
        object.__setattr__(self, "tail_bound", max(0.0, float(self.tail_bound)))

    def __getitem__(self, n):
        return self.probs[n]

    def __len__(self) -> int:
        return self.n_cut

    def total(self) -> float:
        return float(self.probs.sum())

    def completeness_error(self) -> float:
        return abs(self.total() + self.tail_bound - 1.0)


def _geometric_tail(p: np.ndarray) -> float:
    """Geometric extrapolation of the mass beyond ``p[-1]``.

    Uses the largest ratio among the last few terms; once those terms have
    sunk into roundoff their size is itself the bound.
    """
    last = np.asarray(p[-4:], dtype=float)
    if last.size < 2:
        return 0.0
    top = float(last.max())
    if top < 1e-16:
        return top
    ratios = [b / a for a, b in zip(last[:-1], last[1:]) if a > 0]
    r = max(ratios) if ratios else 1.0
    if r >= 1.0:
        return float("inf")
    return float(last[-1] * r / (1.0 - r))


def default_n_cut(mean: float) -> int:
    return max(16, int(ceil(mean + 8.0 * sqrt(mean + 1.0))))


def evolved_mean_photon(spec, p: ChannelParams) -> float:
    """Mean photon number after the channel: ``(2n+1) d^2 + A = 2n(t) + 1``."""
    kf = kernel_factors(p)
    return 0.5 * ((2.0 * spec.mean_photon() + 1.0) * kf.decay**2 + kf.A - 1.0)


def _envelope(w, envelope):
    if envelope is not None:
        return envelope
    if hasattr(w, "envelope"):
        return w.envelope()
    return 0j, 2.0, 0


def _integrate_stack(f, rule: QuadratureRule, check: bool, tol: float) -> np.ndarray:
    def run(r):
        b, wts = r.points()
        return f(b) @ wts
    out = run(rule)
    if check:
        out2 = run(rule.doubled())
        diff = float(np.max(np.abs(out2 - out)))
        if diff > tol:
            raise QuadratureError(f"order doubling changed photon numbers by {diff:.3e}")
    return out


def pnd_overlap(w, n_cut: int | None = None, *, envelope=None, order: int | None = None,
                check: bool = False, tol: float = 1e-9) -> PhotonNumberDistribution:
    """Photon-number distribution of a (1/2-normalised) Wigner function.

    ``w`` is a state object or a vectorised callable; for bare callables pass
    ``envelope=(center, rate, degree)`` describing its Gaussian decay.
    """
    if n_cut is None:
        n_cut = default_n_cut(w.mean_photon()) if hasattr(w, "mean_photon") else 16
    f0 = w.wigner if hasattr(w, "wigner") else w
    c0, b_rate, degree = _envelope(w, envelope)
    rate = 2.0 + b_rate
    rule = QuadratureRule.for_gaussian(b_rate * c0 / rate, rate, degree + n_cut, order=order)

    def integrand(b):
        r2 = np.abs(b) ** 2
        # 4 pi W_n(a) = 4 (-1)^n e^{-2|a|^2} L_n(4|a|^2) = 4 e^{-2|a|^2} P_n(4|a|^2, -1)
        lag = laguerre_scaled_all(n_cut - 1, 4.0 * r2, -1.0)
        return 4.0 * lag * (np.exp(-2.0 * r2) * np.asarray(f0(b)).real)

    probs = _integrate_stack(integrand, rule, check, tol)
    return PhotonNumberDistribution(probs, tail_bound=_geometric_tail(probs))


def pnd_evolved(w0, p: ChannelParams, n_cut: int | None = None, *, envelope=None,
                order: int | None = None, check: bool = False,
                tol: float = 1e-9) -> PhotonNumberDistribution:
    """Photon-number distribution after the channel, from the initial Wigner function.

    ``p(n) = 4 (A-1)^n / (A+1)^(n+1) int d^2b exp(-2 d^2 |b|^2 / (A+1))
    L_n(4 d^2 |b|^2 / (1 - A^2)) W0(b)``, with ``A`` the kernel width and
    ``d`` the amplitude decay.  The Laguerre factor is evaluated in
    homogeneous form, so ``A = 1`` needs no special handling.
    """
    if n_cut is None:
        n_cut = (default_n_cut(evolved_mean_photon(w0, p))
                 if hasattr(w0, "mean_photon") else 16)
    f0 = w0.wigner if hasattr(w0, "wigner") else w0
    kf = kernel_factors(p)
    A, d2 = kf.A, kf.decay**2
    c0, b_rate, degree = _envelope(w0, envelope)
    a_rate = 2.0 * d2 / (A + 1.0)
    rate = a_rate + b_rate
    rule = QuadratureRule.for_gaussian(b_rate * c0 / rate, rate, degree + n_cut, order=order)

    def integrand(b):
        r2 = np.abs(b) ** 2
        y = 4.0 * d2 * r2 / (A + 1.0) ** 2
        lag = laguerre_scaled_all(n_cut - 1, y, (A - 1.0) / (A + 1.0))
        return (4.0 / (A + 1.0)) * lag * (np.exp(-a_rate * r2) * np.asarray(f0(b)).real)

    probs = _integrate_stack(integrand, rule, check, tol)
    return PhotonNumberDistribution(probs, tail_bound=_geometric_tail(probs))


def _logsumexp_signed(logs, signs) -> float:
    logs = np.asarray(logs, dtype=float)
    signs = np.asarray(signs, dtype=float)
    keep = np.isfinite(logs) & (signs != 0)
    if not np.any(keep):
        return 0.0
    top = logs[keep].max()
    return float(np.sum(signs[keep] * np.exp(logs[keep] - top)) * exp(top))


def _log_abs2(h: complex) -> float:
    a = abs(h)
    return 2.0 * log(a) if a > 0 else -np.inf


def pacs_initial_pnd(m: int, z: complex, n: int) -> float:
    """Exact ``|<n| a^dag^m |z>|^2`` normalised, i.e. the t = 0 distribution."""
    if n < m:
        return 0.0
    j = n - m
    r2 = abs(z) ** 2
    if r2 == 0:
        return 1.0 if j == 0 else 0.0
    logp = lgamma(n + 1) - 2.0 * lgamma(j + 1) - r2 + j * log(r2) - lgamma(m + 1)
    return exp(logp) / float(laguerre(m, -r2))


@dataclass(frozen=True)
class PndFactors:
    """Auxiliary factors of the closed-form photon-added distribution."""

    omega: float
    lam: float
    sigma: float
    mu: float
    A: float
    decay: float


def pnd_factors(p: ChannelParams) -> PndFactors:
    kf = kernel_factors(p)
    A, d = kf.A, kf.decay
    if not A < 1.0:
        raise ValueError(f"kernel width A={A:.6g} >= 1: sigma is not real")
    sigma = d / sqrt(1.0 - A * A)
    mu = 1.0 + d * d / (A + 1.0)
    return PndFactors(omega=(2.0 - mu) / mu, lam=2.0 * sigma / mu, sigma=sigma, mu=mu,
                      A=A, decay=d)


def _pnd_general(m: int, z: complex, n: int, f: PndFactors) -> float:
    """Double-sum form valid for any channel with ``A < 1``."""
    omega, lam, sigma, mu, A = f.omega, f.lam, f.sigma, f.mu, f.A
    r2 = abs(z) ** 2
    sq = 1j * np.sqrt(complex(omega))
    x, y = sq * z, sq * np.conj(z)
    # prefactor N lam^2n e^{(2-2mu)|z|^2/mu} / (2 mu (-omega)^(n-m)), in log/sign form
    lognorm = float(laguerre(m, -r2))
    log_pre = (n * log(1.0 - A) - (n + 1) * log(1.0 + A) + log(4.0) - log(lognorm)
               + 2 * n * log(lam) + (2.0 - 2.0 * mu) / mu * r2 - log(2.0 * mu)
               - (n - m) * log(omega))
    # (A-1)^n (-1)^m / (-omega)^(n-m): signs (-1)^n (-1)^m (-1)^(n-m) = +1
    ratio = omega * (lam * sigma - 1.0) / lam**2
    logs, signs = [], []
    for l in range(m + 1):
        for k in range(n + 1):
            h = hermite2(m - l, n - k, x, y)
            lh = _log_abs2(complex(h))
            if not np.isfinite(lh):
                continue
            if k and ratio == 0.0:
                continue
            lr = k * log(abs(ratio)) if k else 0.0
            sign = (1.0 if ratio >= 0 or k % 2 == 0 else -1.0)
            logs.append(lgamma(m + 1) + lgamma(n + 1) + lr - lgamma(l + 1) - lgamma(k + 1)
                        - 2.0 * (lgamma(m - l + 1) + lgamma(n - k + 1)) + lh)
            signs.append(sign)
    return exp(log_pre) * _logsumexp_signed(logs, signs) if logs else 0.0


def _pnd_damping(m: int, z: complex, n: int, omega: float, decay: float) -> float:
    """Single-sum damping form (``A = omega = T``, ``lambda sigma = 1``)."""
    r2 = abs(z) ** 2
    sq = 1j * sqrt(omega)
    x, y = sq * z, sq * np.conj(z)
    log_pre = (lgamma(m + 1) - lgamma(n + 1) + n * log(1.0 - omega) - log(float(laguerre(m, -r2)))
               + (m - n) * log(omega) - decay**2 * r2)
    logs = []
    for l in range(m + 1):
        lh = _log_abs2(complex(hermite2(m - l, n, x, y)))
        logs.append(lh - lgamma(l + 1) - 2.0 * lgamma(m - l + 1))
    return exp(log_pre) * _logsumexp_signed(logs, np.ones(len(logs)))


def pnd_pacs_closed(m: int, z: complex, p: ChannelParams, n: int, branch: str = "auto") -> float:
    """Closed-form ``p(n)`` for a photon-added coherent state after the channel.

    ``branch`` selects ``"damping"`` (single sum, requires ``g = nbar = 0``),
    ``"general"`` (double sum) or ``"auto"``.  When the kernel width reaches
    ``A >= 1`` the closed form has no real ``sigma`` and the quadrature route
    :func:`pnd_evolved` is used instead, with a warning.
    """
    from .states import Pacs

    if p.t == 0:
        return pacs_initial_pnd(m, z, n)
    kf = kernel_factors(p)
    if kf.A >= 1.0:
        warnings.warn(
            f"A={kf.A:.4g} >= 1: no real closed form, falling back to quadrature",
            stacklevel=2,
        )
        return float(pnd_evolved(Pacs(m, z), p, n_cut=n + 1)[n])
    damping_like = p.kind is Channel.DAMPING or (p.g == 0 and p.nbar == 0)
    if branch == "auto":
        branch = "damping" if damping_like else "general"
    if branch == "damping":
        if not damping_like:
            raise ValueError("the single-sum branch needs a pure damping channel")
        return _pnd_damping(m, z, n, kf.T, kf.decay)
    if branch != "general":
        raise ValueError(f"unknown branch {branch!r}")
    return _pnd_general(m, z, n, pnd_factors(p))


def pnd_pacs(m: int, z: complex, p: ChannelParams, n_cut: int) -> PhotonNumberDistribution:
    """Closed-form distribution for ``n < n_cut``."""
    probs = np.array([pnd_pacs_closed(m, z, p, n) for n in range(n_cut)])
    return PhotonNumberDistribution(probs, tail_bound=_geometric_tail(probs))


def mean_photon(pnd: PhotonNumberDistribution) -> float:
    """``sum n p(n)``; refuses distributions whose tail bound is 1e-6 or more."""
    if pnd.tail_bound >= 1e-6:
        raise AccuracyError(f"tail bound {pnd.tail_bound:.2e} too large for a mean")
    return float(np.arange(pnd.n_cut) @ pnd.probs)
