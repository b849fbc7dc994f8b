from math import exp, pi

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wigner_channels import (ChannelParams, Coherent, FockDensityMatrix, Number, Pacs, Thermal,
                             TruncationError, evolve_density, evolve_pacs, evolve_wigner,
                             fock_density, lindblad_rhs, oracle_n_max, pnd_from_density,
                             wigner_coherent, wigner_from_density, wigner_thermal)
from wigner_channels.oracle import annihilation, default_steps, displacement_elements

GRID = (np.linspace(-2, 2, 5)[None, :] + 1j * np.linspace(-2, 2, 5)[:, None]).ravel()


def test_annihilation_commutator():
    a = annihilation(6)
    comm = a @ a.T - a.T @ a
    np.testing.assert_allclose(np.diag(comm)[:-1], 1.0)
    assert a[0, 1] == 1.0 and a[1, 2] == pytest.approx(np.sqrt(2))


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        FockDensityMatrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        FockDensityMatrix(np.array([[0.5, 0.1], [0.3, 0.5]]))
    rho = FockDensityMatrix(np.diag([0.7, 0.3]))
    assert rho.dim == 2 and rho.n_max == 1
    assert rho.trace() == pytest.approx(1.0)
    assert rho.min_eigenvalue() == pytest.approx(0.3)


def test_rhs_is_hermitian_and_traceless_for_damping():
    rho = fock_density(Pacs(2, 1.0 + 0.5j), 30)
    for p in (ChannelParams.damping(1.0, 1.0), ChannelParams.thermal(0.7, 0.5, 1.0)):
        d = lindblad_rhs(rho, p)
        np.testing.assert_allclose(d, d.conj().T, atol=1e-15)
    d = lindblad_rhs(rho, ChannelParams.damping(1.0, 1.0))
    assert abs(np.trace(d)) < 1e-14


def test_vacuum_is_stationary_under_damping():
    rho = fock_density(Number(0), 10)
    np.testing.assert_allclose(lindblad_rhs(rho, ChannelParams.damping(1.0, 1.0)), 0.0)


@pytest.mark.parametrize("kt", [0.2, 1.0, 2.5])
def test_single_photon_decay(kt):
    p = ChannelParams.damping(1.0, kt)
    rho = evolve_density(fock_density(Number(1), 16), p)
    assert rho.data[1, 1].real == pytest.approx(exp(-2 * kt), abs=1e-8)
    assert rho.data[0, 0].real == pytest.approx(1 - exp(-2 * kt), abs=1e-8)


def test_coherent_state_stays_coherent():
    p = ChannelParams.damping(1.0, 0.8)
    z = 1.0 - 0.5j
    rho = evolve_density(fock_density(Coherent(z), 40), p)
    np.testing.assert_allclose(wigner_from_density(rho, GRID),
                               wigner_coherent(z * exp(-0.8), GRID), atol=1e-10)


def test_thermal_state_is_steady():
    p = ChannelParams.thermal(1.0, 0.5, 1.0)
    rho = evolve_density(fock_density(Thermal(0.5), 60), p)
    np.testing.assert_allclose(wigner_from_density(rho, GRID), wigner_thermal(0.5, GRID),
                               atol=1e-10)


def test_step_halving_converged():
    p = ChannelParams.thermal(1.0, 0.5, 1.0)
    s = Pacs(2, 1.0)
    rho0 = fock_density(s, oracle_n_max(s, p))
    n = default_steps(p)
    a = evolve_density(rho0, p, steps=n)
    b = evolve_density(rho0, p, steps=2 * n)
    assert np.max(np.abs(a.data - b.data)) < 1e-9


@pytest.mark.parametrize("p", [ChannelParams.damping(1.0, 1.0), ChannelParams.thermal(1.0, 0.5, 1.0),
                               ChannelParams.laser(1.0, 0.4, 0.5)], ids=repr)
def test_oracle_matches_convolution_closed_form(p):
    s = Pacs(2, 1.0)
    rho = evolve_density(fock_density(s, oracle_n_max(s, p)), p)
    assert rho.min_eigenvalue() > -1e-9
    assert rho.trace_drift < 1e-10
    assert np.max(np.abs(wigner_from_density(rho, GRID) - evolve_pacs(2, 1.0, p, GRID))) < 1e-4


def test_default_steps():
    assert default_steps(ChannelParams.damping(1.0, 1.0)) == 100
    assert default_steps(ChannelParams.damping(1.0, 0.5)) == 100
    assert default_steps(ChannelParams.thermal(1.0, 0.5, 1.0)) == 200
    assert default_steps(ChannelParams.damping(1.0, 0.0)) == 0


def test_zero_time_returns_input():
    rho = fock_density(Pacs(1, 1.0), 20)
    out = evolve_density(rho, ChannelParams.damping(1.0, 0.0))
    np.testing.assert_array_equal(out.data, rho.data)


def test_displacement_of_vacuum_is_coherent():
    beta = 0.6 - 0.3j
    d = displacement_elements(np.array([beta]), 40)[0]
    col = d[:, 0]
    n = np.arange(40)
    from scipy.special import factorial
    expect = np.exp(-abs(beta) ** 2 / 2) * beta**n / np.sqrt(factorial(n))
    np.testing.assert_allclose(col, expect, atol=1e-14)
    np.testing.assert_allclose(displacement_elements(np.array([0j]), 5)[0], np.eye(5), atol=1e-15)


@settings(max_examples=25, deadline=None)
@given(st.complex_numbers(max_magnitude=1.0))
def test_displacement_unitary_in_low_block(beta):
    d = displacement_elements(np.array([beta]), 60)[0]
    block = (d.conj().T @ d)[:10, :10]
    np.testing.assert_allclose(block, np.eye(10), atol=1e-10)


def test_vacuum_wigner_peak():
    assert wigner_from_density(fock_density(Number(0), 4), 0j) == pytest.approx(1 / pi, abs=1e-15)


def test_pnd_from_density_pads():
    pnd = pnd_from_density(fock_density(Number(1), 3), 6)
    np.testing.assert_array_equal(pnd.probs, [0, 1, 0, 0, 0, 0])
    assert pnd.tail_bound == 0.0


def test_oracle_n_max_refuses_large_amplification():
    with pytest.raises(TruncationError):
        oracle_n_max(Coherent(1.0), ChannelParams.laser(1.0, 3.0, 2.0))
    assert oracle_n_max(Coherent(1.0), ChannelParams.damping(1.0, 1.0)) == 24


def test_truncated_generator_preserves_trace():
    # Tr[a^dag rho a] = Tr[a a^dag rho] holds for truncated matrices too
    p = ChannelParams.laser(0.1, 2.0, 1.0)
    rho = evolve_density(fock_density(Number(2), 4), p)
    assert rho.trace_drift < 1e-12


def test_oracle_matches_quadrature_for_thermal_input():
    p = ChannelParams.damping(1.0, 0.4)
    s = Thermal(1.0)
    rho = evolve_density(fock_density(s, oracle_n_max(s, p)), p)
    np.testing.assert_allclose(wigner_from_density(rho, GRID), evolve_wigner(s, p, GRID),
                               atol=1e-9)
