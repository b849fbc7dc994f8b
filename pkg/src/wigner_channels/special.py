"""Special functions and 2-D quadrature over the complex plane.

Everything here is vectorised over the real/complex argument with numpy
broadcasting; polynomial degrees are plain Python ints.  Laguerre polynomials
use the upward three-term recurrence, which is accurate for the arguments that
show up in phase-space work (x >= -|z|^2, degree <= 64).  There is no
asymptotic branch, so degrees above ``MAX_DEGREE`` are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial

import numpy as np

from .errors import QuadratureError

MAX_DEGREE = 64


def _check_degree(n: int, name: str = "n") -> int:
    n = int(n)
    if n < 0:
        raise ValueError(f"{name} must be non-negative, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"{name}={n} exceeds supported degree {MAX_DEGREE}")
    return n


def _finite(x):
    arr = np.asarray(x)
    if not np.all(np.isfinite(arr)):
        raise ValueError("argument must be finite")
    return arr


def laguerre(n: int, x):
    """Laguerre polynomial ``L_n(x)``.

    (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}, starting from L_0 = 1,
    L_1 = 1 - x.  Returns a float for scalar ``x`` and an array otherwise.
    """
    n = _check_degree(n)
    x = _finite(x).astype(float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur[()]


def assoc_laguerre(n: int, k: int, x):
    """Generalised Laguerre polynomial ``L_n^{(k)}(x)`` for integer ``k >= -n``."""
    n = _check_degree(n)
    k = int(k)
    if k < -n:
        raise ValueError(f"order k={k} must satisfy k >= -n")
    x = _finite(x).astype(float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()]
    cur = 1.0 + k - x
    for i in range(1, n):
        prev, cur = cur, ((2 * i + 1 + k - x) * cur - (i + k) * prev) / (i + 1)
    return cur[()]


def laguerre_scaled(n: int, y, c):
    """Homogeneous Laguerre form ``c**n * L_n(-y / c)``.

    Equivalent to ``sum_k C(n,k) y**k c**(n-k) / k!``, which stays finite and
    smooth through ``c = 0`` (where it equals ``y**n / n!``).  This is the
    combination that appears in the evolved photon-added coherent state and in
    the channel photon-number kernel, both of which divide by a quantity that
    crosses zero.
    """
    n = _check_degree(n)
    y = _finite(y)
    c = _finite(c)
    y, c = np.broadcast_arrays(y, c)
    dtype = np.result_type(y, c, float)
    prev = np.ones(y.shape, dtype=dtype)
    if n == 0:
        return prev[()]
    cur = (c + y).astype(dtype)
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1) * c * cur + y * cur - k * c * c * prev) / (k + 1)
    return cur[()]


def laguerre_scaled_all(n_max: int, y, c) -> np.ndarray:
    """Stack of ``laguerre_scaled(k, y, c)`` for ``k = 0..n_max`` along axis 0."""
    n_max = _check_degree(n_max, "n_max")
    y, c = np.broadcast_arrays(_finite(y), _finite(c))
    out = np.empty((n_max + 1,) + y.shape, dtype=np.result_type(y, c, float))
    out[0] = 1.0
    if n_max >= 1:
        out[1] = c + y
    for k in range(1, n_max):
        out[k + 1] = ((2 * k + 1) * c * out[k] + y * out[k] - k * c * c * out[k - 1]) / (k + 1)
    return out


def hermite2_coeff(m: int, n: int, l: int) -> int:
    """Integer coefficient ``m! n! / (l! (m-l)! (n-l)!)`` of the two-variable Hermite sum."""
    return comb(m, l) * comb(n, l) * factorial(l)


def hermite2(m: int, n: int, x, y):
    """Two-variable Hermite polynomial ``H_{m,n}(x, y)``.

    Coefficients of ``exp(-t t' + t x + t' y) = sum t^m t'^n / (m! n!) H_{m,n}``::

        H_{m,n}(x, y) = sum_l (-1)^l m! n! x^(m-l) y^(n-l) / (l! (m-l)! (n-l)!)

    The combinatorial factors are exact Python integers, so integer ``x``/``y``
    yield an exact integer result.  ``x`` and ``y`` may be complex arrays.
    """
    m = _check_degree(m, "m")
    n = _check_degree(n, "n")
    if isinstance(x, (int, np.integer)) and isinstance(y, (int, np.integer)):
        return sum(
            (-1) ** l * hermite2_coeff(m, n, l) * int(x) ** (m - l) * int(y) ** (n - l)
            for l in range(min(m, n) + 1)
        )
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    total = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for l in range(min(m, n) + 1):
        total = total + (-1) ** l * float(hermite2_coeff(m, n, l)) * x ** (m - l) * y ** (n - l)
    return total[()]


@lru_cache(maxsize=64)
def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@dataclass(frozen=True)
class QuadratureRule:
    """Tensor-product Gauss-Legendre rule on the square box
    ``center + [-half_width, half_width]^2`` of the complex plane."""

    order: int = 64
    center: complex = 0j
    half_width: float = 8.0
    nodes: np.ndarray = field(init=False, repr=False, compare=False)
    weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.order) < 2:
            raise ValueError("quadrature order must be >= 2")
        if not (self.half_width > 0 and np.isfinite(self.half_width)):
            raise ValueError("half_width must be positive and finite")
        object.__setattr__(self, "order", int(self.order))
        object.__setattr__(self, "center", complex(self.center))
        x, w = _leggauss(self.order)
        object.__setattr__(self, "nodes", x)
        object.__setattr__(self, "weights", w)

    @classmethod
    def for_gaussian(cls, center, rate: float, degree: int = 0, order: int | None = None,
                     n_std: float = 9.0) -> QuadratureRule:
        """Box sized for an integrand ``poly(|b|^2) * exp(-rate |b - center|^2)``.

        ``degree`` is the polynomial degree in ``|b|^2``; it pushes the box out
        to where ``|b|^(2 degree) exp(-rate |b|^2)`` peaks.
        """
        if rate <= 0:
            raise ValueError("Gaussian rate must be positive")
        half_width = (np.sqrt(degree / rate) + n_std / np.sqrt(2.0 * rate))
        if order is None:
            order = default_order(degree)
        return cls(order=order, center=center, half_width=float(half_width))

    def doubled(self) -> QuadratureRule:
        return QuadratureRule(2 * self.order, self.center, self.half_width)

    @property
    def area(self) -> float:
        return (2.0 * self.half_width) ** 2

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened complex nodes and matching weights (box measure included)."""
        h = self.half_width
        xs = self.center.real + h * self.nodes
        ys = self.center.imag + h * self.nodes
        b = (xs[None, :] + 1j * ys[:, None]).ravel()
        w = (h * h * np.outer(self.weights, self.weights)).ravel()
        return b, w


def default_order(degree: int = 0) -> int:
    """Nodes per axis for a Gaussian times a polynomial of given degree in ``|b|^2``."""
    return max(64, 4 * int(degree) + 48)


def integrate_2d(f, rule: QuadratureRule, check: bool = False, tol: float = 1e-10):
    """Approximate ``iint f(x + iy) dx dy`` over the rule's box.

    ``f`` receives a 1-D complex array of nodes and must return values along
    the first axis (extra trailing axes are integrated independently).  With
    ``check=True`` the result is recomputed at twice the order and a
    :class:`QuadratureError` is raised if the two differ by more than ``tol``.
    """
    b, w = rule.points()
    vals = np.asarray(f(b))
    result = np.tensordot(w, vals, axes=(0, 0))
    if check:
        b2, w2 = rule.doubled().points()
        result2 = np.tensordot(w2, np.asarray(f(b2)), axes=(0, 0))
        diff = np.max(np.abs(result2 - result))
        if diff > tol:
            raise QuadratureError(
                f"order {rule.order} -> {2 * rule.order} changed result by {diff:.3e}"
            )
    return result[()] if np.ndim(result) == 0 else result
