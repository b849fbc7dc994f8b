from fractions import Fraction
from math import comb, factorial

import mpmath as mp
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import eval_genlaguerre

from wigner_channels.errors import QuadratureError
from wigner_channels.special import (QuadratureRule, assoc_laguerre, hermite2, integrate_2d,
                                     laguerre, laguerre_scaled, laguerre_scaled_all)


def laguerre_series(n, x):
    """Explicit series sum_k C(n,k) (-x)^k / k! in 40-digit arithmetic."""
    with mp.workdps(40):
        x = mp.mpf(x)
        return float(mp.fsum(comb(n, k) * (-x) ** k / mp.factorial(k) for k in range(n + 1)))


def test_laguerre_examples():
    assert laguerre(0, 7.3) == 1.0
    assert laguerre(1, 2.0) == -1.0
    assert laguerre(2, 1.0) == pytest.approx(laguerre_series(2, 1.0), abs=1e-15)
    assert laguerre(2, 1.0) == pytest.approx(-0.5, abs=1e-15)


def test_laguerre_rejects_non_finite():
    with pytest.raises(ValueError):
        laguerre(3, np.inf)
    with pytest.raises(ValueError):
        laguerre(3, np.nan)
    with pytest.raises(ValueError):
        laguerre(65, 1.0)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 30), st.floats(-20, 20))
def test_laguerre_recurrence_matches_series(n, x):
    ref = laguerre_series(n, x)
    got = laguerre(n, x)
    # relative 1e-10, absolute floor near zeros scaled by the term size
    scale = max(1.0, float(sum(comb(n, k) * abs(x) ** k / factorial(k) for k in range(n + 1))))
    assert abs(got - ref) <= max(1e-10 * abs(ref), 1e-12 * scale)


def test_laguerre_vectorised():
    x = np.linspace(-3, 9, 7)
    np.testing.assert_allclose(laguerre(5, x), [laguerre(5, v) for v in x], rtol=0, atol=0)


def test_assoc_laguerre_examples():
    assert assoc_laguerre(0, 3, 5.0) == 1.0
    assert assoc_laguerre(1, 1, 1.0) == pytest.approx(1.0)
    # series L_2^(1)(x) = 3 - 3x + x^2/2
    x = 0.5
    assert assoc_laguerre(2, 1, x) == pytest.approx(3 - 3 * x + x * x / 2, abs=1e-15)
    assert assoc_laguerre(2, 1, x) == pytest.approx(1.625, abs=1e-15)


@pytest.mark.parametrize("n,k", [(5, 0), (7, 3), (10, 12), (4, -2), (20, 5)])
def test_assoc_laguerre_against_scipy(n, k):
    x = np.linspace(0, 15, 11)
    if k >= 0:
        ref = eval_genlaguerre(n, k, x)
    else:
        s = sympy.Symbol("s")
        poly = sympy.lambdify(s, sympy.assoc_laguerre(n, k, s))
        ref = np.array([float(poly(v)) for v in x])
    np.testing.assert_allclose(assoc_laguerre(n, k, x), ref, rtol=1e-10, atol=1e-10)


def test_assoc_laguerre_rejects_low_order():
    with pytest.raises(ValueError):
        assoc_laguerre(2, -3, 1.0)


def test_hermite2_examples():
    assert hermite2(0, 0, 3, 7) == 1
    assert hermite2(0, 0, 0.3 + 1j, 2.0) == 1
    assert hermite2(3, 0, 2, 9) == 8
    assert hermite2(1, 1, 2, 3) == 5


def test_hermite2_matches_generating_function_exactly():
    t, u, x, y = sympy.symbols("t u x y")
    gen = sympy.exp(-t * u + t * x + u * y)
    series = sympy.series(sympy.series(gen, t, 0, 5).removeO(), u, 0, 5).removeO()
    poly = sympy.Poly(sympy.expand(series), t, u)
    for m in range(5):
        for n in range(5):
            coeff = poly.coeff_monomial(t**m * u**n) * factorial(m) * factorial(n)
            for xv, yv in [(2, 3), (-1, 4), (5, -7), (0, 1)]:
                expect = int(coeff.subs({x: xv, y: yv}))
                got = hermite2(m, n, xv, yv)
                assert isinstance(got, int)
                assert got == expect


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 15), st.floats(-3, 3), st.floats(-3, 3))
def test_hermite_laguerre_bridge(n, re, im):
    x = complex(re, im)
    y = np.conj(x)  # xy = |x|^2 real
    lhs = hermite2(n, n, x, y)
    rhs = (-1) ** n * factorial(n) * laguerre(n, abs(x) ** 2)
    assert abs(lhs.imag) <= 1e-9 * max(1.0, abs(rhs))
    assert abs(lhs.real - rhs) <= 1e-9 * max(1.0, abs(rhs))


def test_hermite_laguerre_bridge_real_pair():
    # xy real with x, y both real and of opposite sign
    for n in range(16):
        lhs = hermite2(n, n, 1.5, -0.8)
        rhs = (-1) ** n * factorial(n) * laguerre(n, -1.2)
        assert lhs.real == pytest.approx(rhs, rel=1e-9)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 8), st.integers(0, 8), st.complex_numbers(max_magnitude=3))
def test_hermite2_conjugate_symmetry(m, n, x):
    y = np.conj(x)
    a = hermite2(m, n, x, y)
    b = np.conj(hermite2(n, m, np.conj(y), np.conj(x)))
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


def test_laguerre_scaled_polynomial_form():
    rng = np.random.default_rng(1)
    for n in range(8):
        y = rng.uniform(0, 5, 10)
        c = rng.uniform(-1, 1, 10)
        series = sum(comb(n, k) * y**k * c ** (n - k) / factorial(k) for k in range(n + 1))
        np.testing.assert_allclose(laguerre_scaled(n, y, c), series, rtol=1e-12, atol=1e-13)
        mask = np.abs(c) > 1e-3
        np.testing.assert_allclose(laguerre_scaled(n, y, c)[mask],
                                   c[mask] ** n * laguerre(n, -y[mask] / c[mask]), rtol=1e-9)
    # at c = 0 only the top term survives
    assert laguerre_scaled(4, 2.0, 0.0) == pytest.approx(2.0**4 / 24)


def test_laguerre_scaled_all_stack():
    y = np.array([0.1, 1.0, 3.0])
    stack = laguerre_scaled_all(6, y, -0.4)
    for k in range(7):
        np.testing.assert_allclose(stack[k], laguerre_scaled(k, y, -0.4), rtol=1e-14)


def test_quadrature_rule_invariants():
    rule = QuadratureRule(order=12, center=0.3 - 1j, half_width=2.5)
    _, w = rule.points()
    assert np.all(w > 0)
    assert w.sum() == pytest.approx(rule.area, rel=1e-14)
    with pytest.raises(ValueError):
        QuadratureRule(order=1)
    with pytest.raises(ValueError):
        QuadratureRule(half_width=0.0)


def test_integrate_constant_unit_box():
    rule = QuadratureRule(order=4, center=0j, half_width=1.0)
    assert integrate_2d(lambda b: np.ones(b.shape), rule) == pytest.approx(4.0, abs=1e-14)


def test_integrate_gaussian_normalisation():
    rule = QuadratureRule(order=80, center=0j, half_width=8.0)
    val = integrate_2d(lambda b: np.exp(-np.abs(b) ** 2) / np.pi, rule)
    assert abs(val - 1.0) < 1e-10


def gaussian_identity_integrand(zeta, xi, eta):
    return lambda b: np.exp(zeta * np.abs(b) ** 2 + xi * b + eta * np.conj(b)) / np.pi


def test_integrate_gaussian_identity():
    zeta, xi, eta = -1.0, 0.3, 0.2
    exact = -1.0 / zeta * np.exp(-xi * eta / zeta)
    assert exact == pytest.approx(1.0618365465453596, abs=1e-15)
    rule = QuadratureRule.for_gaussian(0j, 1.0)
    val = integrate_2d(gaussian_identity_integrand(zeta, xi, eta), rule)
    assert abs(val - exact) < 1e-10
    # converged: doubling the order moves it by < 1e-12
    val2 = integrate_2d(gaussian_identity_integrand(zeta, xi, eta), rule.doubled())
    assert abs(val2 - val) < 1e-12


def test_integrate_check_flags_underresolved_rule():
    rule = QuadratureRule(order=4, center=0j, half_width=8.0)
    with pytest.raises(QuadratureError):
        integrate_2d(lambda b: np.exp(-np.abs(b) ** 2), rule, check=True)


def test_integrate_batched_outputs():
    rule = QuadratureRule(order=64, center=0j, half_width=8.0)
    out = integrate_2d(lambda b: np.stack([np.exp(-np.abs(b) ** 2), np.abs(b) ** 2
                                           * np.exp(-np.abs(b) ** 2)], axis=1), rule)
    np.testing.assert_allclose(out, [np.pi, np.pi], rtol=1e-12)


def test_fraction_free_hermite_large_orders_no_overflow():
    v = hermite2(30, 30, 0.5 + 0.5j, 0.5 - 0.5j)
    assert np.isfinite(v)
    assert v.real == pytest.approx(float(Fraction(factorial(30)) * laguerre(30, 0.5)), rel=1e-8)
