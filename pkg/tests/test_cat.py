import math

import numpy as np
import pytest

from catlattice import (
    CatState,
    NumericalContractError,
    build_defect_lattice,
    coherence_factor,
    coherent_fock_vector,
    coherent_overlap,
    estimate_G_from_counts,
    fringe_visibility,
    photon_number_distribution,
    propagate,
    reduced_density_matrix,
    required_truncation,
    wigner_function,
    wigner_marginal,
)


def _survival(kappa0, sigma0, z):
    model = build_defect_lattice(kappa0, sigma0,
                                 num_sites=required_truncation(1.0, z[-1]))
    return propagate(model, z).survival


def test_balanced_identity():
    # For beta0 = -alpha0 the general exponent collapses to
    # exp(-2 <n> (1 - |S|^2)); both forms must agree to 1e-12.
    z = np.linspace(0.0, 12.0, 121)
    s = _survival(0.6, 0.0, z)
    cat = CatState(alpha0=3.0, beta0=-3.0)
    trace = coherence_factor(cat, s, z_grid=z)
    direct = np.exp(-2.0 * 9.0 * (1.0 - np.abs(s) ** 2))
    np.testing.assert_allclose(trace.G, direct, atol=1e-12)
    assert trace.G[0] == 1.0


def test_decayed_amplitudes_follow_survival():
    z = np.linspace(0.0, 5.0, 11)
    s = _survival(1.0, 0.5, z)
    cat = CatState(alpha0=2.0, beta0=-2.0)
    trace = coherence_factor(cat, s, z_grid=z)
    np.testing.assert_allclose(trace.alpha_z, 2.0 * s, atol=1e-14)
    np.testing.assert_allclose(trace.beta_z, -2.0 * s, atol=1e-14)


def test_survival_above_unity_rejected():
    cat = CatState(alpha0=1.0, beta0=-1.0)
    with pytest.raises(NumericalContractError):
        coherence_factor(cat, np.array([1.0, 1.0 + 1e-6]))


def test_markovian_reference_column():
    z = np.linspace(0.0, 10.0, 41)
    s = _survival(0.2, 0.0, z)
    cat = CatState(alpha0=3.0, beta0=-3.0)
    trace = coherence_factor(cat, s, z_grid=z, markov_rate=0.08)
    expected = np.exp(-18.0 * (1.0 - np.exp(-0.08 * z)))
    np.testing.assert_allclose(trace.markovian_reference, expected, atol=1e-12)


def _brute_force_rho(cat, S00, G, n_max):
    a = coherent_fock_vector(cat.alpha0 * S00, n_max)
    b = coherent_fock_vector(cat.beta0 * S00, n_max)
    n = cat.normalization
    rho = (np.outer(a, a.conj()) + np.outer(b, b.conj())
           + np.conj(G) * np.outer(a, b.conj())
           + G * np.outer(b, a.conj())) / n
    return rho


def _paired_G(cat, S00):
    # the coherence factor that belongs to a given survival amplitude; only
    # this pairing keeps the reduced state's trace at exactly 1
    ex = -0.5 * (1.0 - abs(S00) ** 2) * (
        abs(cat.alpha0) ** 2 + abs(cat.beta0) ** 2
        - 2.0 * np.conj(cat.alpha0) * cat.beta0)
    return np.exp(ex)


@pytest.mark.parametrize("alpha0,beta0,S00", [
    (3.0, -3.0, 0.6),
    (2.0, -2.0, 1.0),
    (1.5 + 0.5j, -1.5 - 0.5j, 0.7 - 0.1j),
    (1.0, 0.8, 0.9),
])
def test_density_matrix_against_outer_products(alpha0, beta0, S00):
    cat = CatState(alpha0=alpha0, beta0=beta0)
    G = _paired_G(cat, S00)
    state = reduced_density_matrix(cat, S00, G, n_max=40)
    np.testing.assert_allclose(state.rho, _brute_force_rho(cat, S00, G, 40),
                               atol=1e-12)
    assert abs(np.trace(state.rho) - 1.0) < 1e-12


def test_density_matrix_positive_and_normalized():
    # arbitrary G is legitimate at S00 = 1 where the lobes never moved
    cat = CatState(alpha0=3.0, beta0=-3.0)
    for G in (1.0, 0.5, 0.0):
        state = reduced_density_matrix(cat, 1.0, G)
        evals = np.linalg.eigvalsh(state.rho)
        assert evals.min() > -1e-12
        assert abs(np.trace(state.rho) - 1.0) < 1e-7
        purity = np.real(np.trace(state.rho @ state.rho))
        assert purity <= 1.0 + 1e-12
    # a decayed S00 demands its own paired G
    state = reduced_density_matrix(cat, 0.8, _paired_G(cat, 0.8))
    assert abs(np.trace(state.rho) - 1.0) < 1e-12
    assert np.linalg.eigvalsh(state.rho).min() > -1e-12


def test_unpaired_G_trips_trace_contract():
    # coherence larger than the survival allows is not a physical state;
    # the constructor refuses rather than silently renormalizing
    cat = CatState(alpha0=3.0, beta0=-3.0)
    with pytest.raises(NumericalContractError):
        reduced_density_matrix(cat, 0.6, 1.0)


def test_purity_extremes():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    pure = reduced_density_matrix(cat, 1.0, 1.0)
    assert np.real(np.trace(pure.rho @ pure.rho)) == pytest.approx(1.0, abs=1e-10)
    # G = 0 on well-separated lobes is an even mixture: eigenvalues 1/2, 1/2
    mixed = reduced_density_matrix(cat, 1.0, 0.0)
    evals = np.sort(np.linalg.eigvalsh(mixed.rho))[::-1]
    np.testing.assert_allclose(evals[:2], [0.5, 0.5], atol=1e-7)
    assert np.all(evals[2:] < 1e-7)


def test_trace_preserved_for_complex_amplitudes():
    # The off-diagonal blocks carry conj(G) and G; with complex amplitudes
    # and a complex paired G the trace must still come out exactly 1.
    cat = CatState(alpha0=1.0 + 2.0j, beta0=-0.5 + 0.3j)
    S00 = 0.9 * np.exp(0.4j)
    state = reduced_density_matrix(cat, S00, _paired_G(cat, S00))
    assert abs(np.trace(state.rho) - 1.0) < 1e-12
    np.testing.assert_allclose(state.rho, state.rho.conj().T, atol=1e-14)


def test_photon_distribution_matches_diagonal():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    S00 = 0.75
    G = float(np.real(_paired_G(cat, S00)))
    state = reduced_density_matrix(cat, S00, G)
    n = np.arange(state.rho.shape[0])
    p = photon_number_distribution(cat, S00, G, n)
    np.testing.assert_allclose(p, np.real(np.diag(state.rho)), atol=1e-12)
    assert abs(p.sum() - 1.0) < 1e-8


def test_photon_distribution_parity():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    odd = photon_number_distribution(cat, 1.0, 1.0, np.arange(1, 30, 2))
    assert np.all(odd == 0.0)
    # G = 0 is the Poissonian of the single surviving coherent state, up to
    # the exp(-2 |alpha0|^2) cat-normalization correction (here ~1e-8)
    n = np.arange(0, 31)
    p0 = photon_number_distribution(cat, 0.9, 0.0, n)
    lam = abs(3.0 * 0.9) ** 2
    from scipy.stats import poisson
    np.testing.assert_allclose(p0, poisson.pmf(n, lam), atol=1e-8)


def test_photon_distribution_requires_balanced_cat():
    with pytest.raises(ValueError):
        photon_number_distribution(CatState(2.0, 1.0), 1.0, 0.5, 2)


def test_estimator_round_trip():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    for G in (0.0, 0.25, 0.5, 1.0):
        n = 8
        p = photon_number_distribution(cat, 1.0, G, n)
        p_mix = photon_number_distribution(cat, 1.0, 0.0, n)
        assert abs(estimate_G_from_counts(p, p_mix) - G) < 1e-6


def test_estimator_rejects_unusable_n():
    with pytest.raises(ValueError):
        estimate_G_from_counts(1e-35, 1e-31)


def test_wigner_vacuum():
    vac = reduced_density_matrix(CatState(0.0, 0.0), 1.0, 1.0, n_max=10)
    w = wigner_function(vac, [0.0], [0.0])
    assert abs(w[0, 0] - 1.0 / math.pi) < 1e-6


def _analytic_cat_wigner(a, G, X, P):
    # Three-Gaussian decomposition of the balanced-cat Wigner function with
    # real lobe amplitude a: two displaced vacua plus a G-weighted fringe.
    n = 2.0 + 2.0 * math.exp(-2.0 * a * a)
    lobes = (np.exp(-(X - math.sqrt(2) * a) ** 2 - P ** 2)
             + np.exp(-(X + math.sqrt(2) * a) ** 2 - P ** 2))
    fringe = 2.0 * G * np.exp(-X ** 2 - P ** 2) * np.cos(2.0 * math.sqrt(2) * a * P)
    return (lobes + fringe) / (n * math.pi)


def test_wigner_matches_analytic_cat():
    a, G = 3.0, 0.7
    cat = CatState(alpha0=a, beta0=-a)
    state = reduced_density_matrix(cat, 1.0, G)
    xv = np.linspace(-7.5, 7.5, 121)
    pv = np.linspace(-7.5, 7.5, 101)
    W = wigner_function(state, xv, pv)
    X, P = np.meshgrid(xv, pv)
    np.testing.assert_allclose(W, _analytic_cat_wigner(a, G, X, P), atol=1e-8)


def test_wigner_normalization_and_visibility():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    xv = np.linspace(-8.0, 8.0, 321)
    pv = np.linspace(-8.0, 8.0, 301)
    for G in (1.0, 0.5):
        W = wigner_function(reduced_density_matrix(cat, 1.0, G), xv, pv)
        total = np.trapezoid(np.trapezoid(W, xv, axis=1), pv)
        assert abs(total - 1.0) < 1e-3
        vis = fringe_visibility(W, xv, pv)
        assert abs(vis - G) / G < 0.02


def test_wigner_mixture_has_no_fringes():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    xv = np.linspace(-8.0, 8.0, 161)
    pv = np.linspace(-8.0, 8.0, 161)
    W = wigner_function(reduced_density_matrix(cat, 1.0, 0.0), xv, pv)
    mid = np.abs(W[:, np.argmin(np.abs(xv))]).max()
    lobe = W.max()
    assert mid < 1e-3 * lobe


def test_wigner_marginal_recovers_position_density():
    cat = CatState(alpha0=2.0, beta0=-2.0)
    state = reduced_density_matrix(cat, 1.0, 1.0)
    xv = np.linspace(-7.0, 7.0, 281)
    pv = np.linspace(-7.0, 7.0, 261)
    W = wigner_function(state, xv, pv)
    px = wigner_marginal(W, xv, pv, axis="x")
    assert abs(np.trapezoid(px, xv) - 1.0) < 1e-3
    # lobes sit at x = +-sqrt(2) alpha
    hi = xv[xv > 0][np.argmax(px[xv > 0])]
    lo = xv[xv < 0][np.argmax(px[xv < 0])]
    assert abs(hi - 2.0 * math.sqrt(2.0)) < 0.06
    assert abs(lo + 2.0 * math.sqrt(2.0)) < 0.06


def test_narrow_grid_warns():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    state = reduced_density_matrix(cat, 1.0, 1.0)
    with pytest.warns(UserWarning):
        wigner_function(state, np.linspace(-2.0, 2.0, 11),
                        np.linspace(-2.0, 2.0, 11))


def test_cat_state_helpers():
    cat = CatState(alpha0=3.0, beta0=-3.0)
    assert cat.is_balanced
    assert cat.mean_photons == 9.0
    assert cat.normalization == pytest.approx(2.0 + 2.0 * math.exp(-18.0))
    assert coherent_overlap(2.0, 2.0) == pytest.approx(1.0)
    v = coherent_fock_vector(1.3, 60)
    assert abs(np.vdot(v, v) - 1.0) < 1e-12
