import numpy as np
import pytest
from scipy.special import jv

from catlattice import (
    LatticeModel,
    build_defect_lattice,
    propagate,
    propagate_state,
    required_truncation,
    stark_chain,
    uniform_edge_amplitudes,
    uniform_edge_survival,
)


def test_uniform_chain_matches_bessel_image_sum():
    # On the semi-infinite uniform chain the edge-launched amplitudes have
    # the closed form c_j(z) = (-i)^j [J_j(2 k z) + J_{j+2}(2 k z)].
    kappa = 1.0
    z = 4.0
    model = build_defect_lattice(kappa0=kappa, sigma0=0.0, kappa=kappa,
                                 num_sites=required_truncation(kappa, z))
    run = propagate(model, np.array([z]))
    for j in range(6):
        expected = (-1j) ** j * (jv(j, 2 * kappa * z) + jv(j + 2, 2 * kappa * z))
        assert abs(run.amplitudes[0, j] - expected) < 1e-8


def test_edge_survival_closed_form():
    kappa = 0.7
    z = np.linspace(0.0, 12.0, 40)
    model = build_defect_lattice(kappa0=kappa, sigma0=0.0, kappa=kappa,
                                 num_sites=required_truncation(kappa, z[-1]))
    run = propagate(model, z)
    np.testing.assert_allclose(run.survival, uniform_edge_survival(kappa, z),
                               atol=1e-8)
    sites = uniform_edge_amplitudes(kappa, z, [0])
    np.testing.assert_allclose(run.amplitudes[:, 0], sites[:, 0], atol=1e-8)


def test_propagation_is_unitary():
    for kappa0, sigma0 in [(0.2, 0.0), (3.0, 0.0), (1.4, 4.0), (0.9, -1.3)]:
        model = build_defect_lattice(kappa0, sigma0, num_sites=80)
        run = propagate(model, np.linspace(0.0, 9.0, 13))
        norms = np.sum(np.abs(run.amplitudes) ** 2, axis=1)
        np.testing.assert_allclose(norms, 1.0, atol=1e-10)


def test_propagation_composes_like_a_semigroup():
    model = build_defect_lattice(2.0, 0.5, num_sites=60)
    z1, z2 = 1.3, 2.4
    psi0 = np.zeros(60, dtype=complex)
    psi0[0] = 1.0
    once = propagate_state(model, psi0, [z1 + z2])[0]
    mid = propagate_state(model, psi0, [z1])[0]
    twice = propagate_state(model, mid, [z2])[0]
    np.testing.assert_allclose(once, twice, atol=1e-10)


def test_truncation_insensitivity():
    # Doubling the chain length must not move the edge survival once the
    # light cone fits inside the truncated chain.
    kappa, z_max = 1.0, 15.0
    n = required_truncation(kappa, z_max)
    z = np.linspace(0.0, z_max, 31)
    small = propagate(build_defect_lattice(0.5, 0.0, num_sites=n), z)
    big = propagate(build_defect_lattice(0.5, 0.0, num_sites=2 * n), z)
    assert np.max(np.abs(small.survival - big.survival)) < 1e-8


def test_required_truncation_examples():
    assert required_truncation(1.0, 20.0, margin=1.25) == 60
    assert required_truncation(1.0, 0.001, margin=1.0) == 11


def test_stark_ladder_revivals():
    # A linear site-energy ramp gives revivals at z_B = 2 pi / step for an
    # excitation launched far from the chain ends.
    step = 0.8
    n = 121
    model = stark_chain(kappa=1.0, step=step, num_sites=n)
    z_b = 2.0 * np.pi / step
    psi0 = np.zeros(n, dtype=complex)
    psi0[n // 2] = 1.0
    states = propagate_state(model, psi0, [z_b, 2.0 * z_b])
    for row in states:
        assert abs(abs(np.vdot(psi0, row)) ** 2 - 1.0) < 1e-6


def test_survival_is_edge_column():
    model = build_defect_lattice(1.0, 0.0, num_sites=30)
    run = propagate(model, np.linspace(0.0, 3.0, 7))
    np.testing.assert_array_equal(run.survival, run.amplitudes[:, 0])


def test_model_validation():
    with pytest.raises(ValueError):
        LatticeModel(2, np.array([1.0]), np.zeros(2))
    with pytest.raises(ValueError):
        LatticeModel(4, np.array([1.0, -0.5, 1.0]), np.zeros(4))
    with pytest.raises(ValueError):
        LatticeModel(4, np.array([1.0, np.nan, 1.0]), np.zeros(4))
    with pytest.raises(ValueError):
        propagate(build_defect_lattice(1.0, 0.0, num_sites=10),
                  [0.0, 2.0, 1.0])


def test_zero_coupling_warns():
    with pytest.warns(UserWarning):
        LatticeModel(4, np.array([1.0, 0.0, 1.0]), np.zeros(4))
