"""Schrodinger-cat decoherence driven by a single survival amplitude.

The optical cat lives in the boundary waveguide; photon leakage into the
lattice acts as an amplitude-damping channel whose only parameter is the
single-photon survival amplitude S_00(z). The two coherent components decay
as alpha(z) = alpha0 * S_00(z), and the off-diagonal (coherence) block is
damped by

    G(z) = exp[-1/2 (1 - |S_00|^2) (|alpha0|^2 + |beta0|^2 - 2 alpha0^* beta0)]

which for the balanced cat (beta0 = -alpha0) reduces to
exp[-2 <n> (1 - |S_00|^2)].

All Fock-space objects (density matrix, photon statistics, Wigner function)
are assembled from truncated coherent-state vectors. Convention for phase
space: x = sqrt(2) Re(alpha), p = sqrt(2) Im(alpha), vacuum W(0,0) = 1/pi.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np
from scipy.special import gammaln

from .errors import NumericalContractError


@dataclass
class CatState:
    """Superposition (|alpha0> + |beta0>)/sqrt(N) at the lattice boundary."""

    alpha0: complex
    beta0: complex

    def __post_init__(self):
        self.alpha0 = complex(self.alpha0)
        self.beta0 = complex(self.beta0)
        if not (np.isfinite(self.alpha0) and np.isfinite(self.beta0)):
            raise ValueError("coherent amplitudes must be finite")
        if self.normalization <= 0.0:
            raise ValueError("cat normalization must be positive")

    @property
    def normalization(self) -> float:
        """N = 2 + 2 Re<alpha0|beta0>; equals 2 + 2 exp(-2|alpha0|^2) for beta0 = -alpha0."""
        return 2.0 + 2.0 * coherent_overlap(self.alpha0, self.beta0).real

    @property
    def mean_photons(self) -> float:
        return abs(self.alpha0) ** 2

    @property
    def is_balanced(self) -> bool:
        return self.beta0 == -self.alpha0


@dataclass
class CoherenceTrace:
    """G(z) along a propagation run, with the decayed amplitudes."""

    z_grid: np.ndarray
    survival_prob: np.ndarray
    G: np.ndarray
    alpha_z: np.ndarray
    beta_z: np.ndarray
    markovian_reference: Optional[np.ndarray] = None


@dataclass
class ReducedCatState:
    """Fock-truncated density matrix of the boundary mode."""

    rho: np.ndarray
    trace: float = field(init=False)
    parity: float = field(init=False)

    def __post_init__(self):
        diag = np.real(np.diag(self.rho))
        self.trace = float(diag.sum())
        signs = 1.0 - 2.0 * (np.arange(len(diag)) % 2)
        self.parity = float((signs * diag).sum())


def coherent_overlap(a: complex, b: complex) -> complex:
    """<a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)."""
    return np.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + np.conj(a) * b)


def coherent_fock_vector(alpha: complex, n_max: int) -> np.ndarray:
    """Truncated Fock expansion <n|alpha> = exp(-|alpha|^2/2) alpha^n / sqrt(n!).

    Built by the stable recurrence v[n] = v[n-1] * alpha / sqrt(n), which
    avoids overflow in alpha^n and n! separately.
    """
    v = np.zeros(n_max + 1, dtype=complex)
    v[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, n_max + 1):
        v[n] = v[n - 1] * alpha / math.sqrt(n)
    return v


def default_n_max(cat: CatState) -> int:
    """Truncation covering > 8 Poisson standard deviations above the mean."""
    a = max(abs(cat.alpha0), abs(cat.beta0))
    return int(math.ceil(a * a + 8.0 * a + 20.0))


def coherence_factor(cat: CatState, survival, z_grid=None,
                     markov_rate: Optional[float] = None) -> CoherenceTrace:
    """Damping factor of the coherence block for each survival sample.

    Parameters
    ----------
    cat : CatState
    survival : array_like of complex
        S_00 samples from a lattice or continuum propagation.
    z_grid : array_like, optional
        Propagation distances matching `survival`; stored for plotting and
        needed for the Markovian reference curve.
    markov_rate : float, optional
        Weak-coupling decay rate gamma; when given together with z_grid the
        trace carries the exponential-decay reference obtained by replacing
        |S_00|^2 with exp(-gamma z) in the exponent.

    Raises
    ------
    NumericalContractError
        If any |S_00| exceeds 1 + 1e-8 (an upstream propagation bug), or if
        the balanced-form identity fails.
    """
    survival = np.atleast_1d(np.asarray(survival, dtype=complex))
    mags = np.abs(survival)
    if np.any(mags > 1.0 + 1e-8):
        raise NumericalContractError(
            f"|S_00| reaches {mags.max():.12f} > 1 + 1e-8; "
            "survival amplitudes from a lossless model cannot exceed unity"
        )
    a0, b0 = cat.alpha0, cat.beta0
    # half the exponent prefactor of the damping law
    c = 0.5 * (abs(a0) ** 2 + abs(b0) ** 2 - 2.0 * np.conj(a0) * b0)
    # survival probabilities within roundoff of unity (or epsilon above it,
    # inside the amplitude gate) are exactly 1 physically; snapping them
    # keeps G(0) = 1 bitwise and G <= 1 for the balanced cat
    s2 = mags ** 2
    s2 = np.where(s2 > 1.0 - 1e-12, 1.0, s2)
    decay = 1.0 - s2
    exponent = -c * decay
    if np.abs(np.imag(exponent)).max() > 0.0:
        G = np.exp(exponent)
    else:
        G = np.exp(np.real(exponent))
    if cat.is_balanced:
        balanced = np.exp(-2.0 * cat.mean_photons * decay)
        mismatch = np.abs(G - balanced).max()
        if mismatch > 1e-12:
            raise NumericalContractError(
                f"balanced-cat identity violated by {mismatch:.3e}"
            )
    reference = None
    if z_grid is not None:
        z_grid = np.asarray(z_grid, dtype=float)
        if markov_rate is not None:
            ref_decay = 1.0 - np.exp(-markov_rate * z_grid)
            ref = np.exp(-c * ref_decay)
            reference = np.real(ref) if np.imag(c) == 0.0 else ref
    return CoherenceTrace(
        z_grid=z_grid,
        survival_prob=s2,
        G=G,
        alpha_z=a0 * survival,
        beta_z=b0 * survival,
        markovian_reference=reference,
    )


def reduced_density_matrix(cat: CatState, S00: complex,
                           G: Union[float, complex],
                           n_max: Optional[int] = None) -> ReducedCatState:
    """Fock-basis density matrix of the decohered cat.

    rho = (1/N) [ |a><a| + |b><b| + conj(G)|a><b| + G |b><a| ]

    with a = alpha0 * S00, b = beta0 * S00 and N the exact initial
    normalization. The conjugation on the cross term keeps the trace exactly
    preserved for complex amplitudes as well; for the real-amplitude cats of
    interest G is real and the distinction vanishes.

    Raises
    ------
    NumericalContractError
        If the truncated trace deviates from 1 by more than 1e-6 (n_max too
        small for the photon content).
    """
    if n_max is None:
        n_max = default_n_max(cat)
    a = cat.alpha0 * S00
    b = cat.beta0 * S00
    va = coherent_fock_vector(a, n_max)
    vb = coherent_fock_vector(b, n_max)
    N = cat.normalization
    rho = (
        np.outer(va, va.conj())
        + np.outer(vb, vb.conj())
        + np.conj(G) * np.outer(va, vb.conj())
        + G * np.outer(vb, va.conj())
    ) / N
    state = ReducedCatState(rho=rho)
    if abs(state.trace - 1.0) > 1e-6:
        raise NumericalContractError(
            f"truncated trace {state.trace:.9f} deviates from 1 by more than "
            f"1e-6; increase n_max (currently {n_max})"
        )
    return state


def photon_number_distribution(cat: CatState, S00: complex,
                               G: float, n) -> Union[float, np.ndarray]:
    """P_n of the balanced cat: (2/N) |a|^(2n) e^(-|a|^2) [1 + (-1)^n G] / n!

    with a = alpha0 * S00. Evaluated in log space so large photon numbers do
    not overflow. Equals the diagonal of `reduced_density_matrix`.
    """
    if not cat.is_balanced:
        raise ValueError(
            "closed-form photon distribution requires beta0 = -alpha0; "
            "use the diagonal of reduced_density_matrix for unbalanced cats"
        )
    n_arr = np.atleast_1d(np.asarray(n))
    if np.any(n_arr < 0) or not np.issubdtype(n_arr.dtype, np.integer):
        raise ValueError("photon number n must be a non-negative integer")
    amp2 = abs(cat.alpha0 * S00) ** 2
    N = cat.normalization
    signs = 1.0 - 2.0 * (n_arr % 2)
    with np.errstate(divide="ignore"):
        logp = np.where(
            (amp2 == 0.0) & (n_arr > 0),
            -np.inf,
            n_arr * np.log(np.maximum(amp2, 1e-300)) - amp2 - gammaln(n_arr + 1.0),
        )
    p = (2.0 / N) * np.exp(logp) * (1.0 + signs * G)
    if amp2 == 0.0:
        p = np.where(n_arr == 0, (2.0 / N) * (1.0 + G), 0.0)
    return p if np.ndim(n) else float(p[0])


def estimate_G_from_counts(P_n: float, P_n_mix: float) -> float:
    """Ratio estimator G = P_n / P_n_mix - 1 for a fixed even photon number.

    P_n_mix is the same-n probability of the fully dephased (G = 0) mixture.

    Raises
    ------
    ValueError
        If P_n_mix is below 1e-30; that photon number is essentially never
        observed, pick one nearer the mean.
    """
    if P_n_mix < 1e-30:
        raise ValueError(
            f"reference probability {P_n_mix:.3e} < 1e-30; the chosen photon "
            "number is unusable, pick n closer to |alpha|^2"
        )
    return P_n / P_n_mix - 1.0


def wigner_function(state: ReducedCatState, xvec, pvec) -> np.ndarray:
    """Wigner function W(x, p) of a truncated Fock-basis density matrix.

    Iterative Laguerre-recurrence construction over the upper triangle of
    rho; returns W with shape (len(pvec), len(xvec)). Normalized so the
    vacuum gives W(0,0) = 1/pi and the full integral is 1.
    """
    rho = state.rho
    M = rho.shape[0]
    xvec = np.asarray(xvec, dtype=float)
    pvec = np.asarray(pvec, dtype=float)
    _warn_if_grid_narrow(rho, xvec, pvec)
    X, P = np.meshgrid(xvec, pvec)
    A = (X + 1j * P) / math.sqrt(2.0)
    Wlist = np.empty((M,) + A.shape, dtype=complex)
    Wlist[0] = np.exp(-2.0 * np.abs(A) ** 2) / math.pi
    W = np.real(rho[0, 0]) * np.real(Wlist[0])
    for n in range(1, M):
        Wlist[n] = (2.0 * A * Wlist[n - 1]) / math.sqrt(n)
        W += 2.0 * np.real(rho[0, n] * Wlist[n])
    for m in range(1, M):
        temp = Wlist[m].copy()
        Wlist[m] = (2.0 * np.conj(A) * temp - math.sqrt(m) * Wlist[m - 1]) / math.sqrt(m)
        W += np.real(rho[m, m] * Wlist[m])
        for n in range(m + 1, M):
            temp2 = (2.0 * A * Wlist[n - 1] - math.sqrt(m) * temp) / math.sqrt(n)
            temp = Wlist[n].copy()
            Wlist[n] = temp2
            W += 2.0 * np.real(rho[m, n] * Wlist[n])
    return W


def _warn_if_grid_narrow(rho, xvec, pvec):
    if len(xvec) < 2 or len(pvec) < 2:
        # single-point probes are deliberate, not an undersized grid
        return
    diag = np.real(np.diag(rho))
    nbar = float(np.dot(np.arange(len(diag)), diag))
    needed = math.sqrt(2.0 * max(nbar, 0.0)) + 4.0 / math.sqrt(2.0)
    half_x = max(abs(xvec[0]), abs(xvec[-1]))
    half_p = max(abs(pvec[0]), abs(pvec[-1]))
    if min(half_x, half_p) < needed:
        warnings.warn(
            f"phase-space grid half-width {min(half_x, half_p):.2f} is below "
            f"{needed:.2f} (lobe position + 4 vacuum widths); normalization "
            "and visibility may be unreliable",
            stacklevel=3,
        )


def fringe_visibility(W: np.ndarray, xvec, pvec, lobe_exclusion: float = 1.0) -> float:
    """Interference visibility of a two-lobe cat Wigner function.

    max_p |W(0, p)| over the midline, divided by 2 sqrt(I+ I-) with I+-
    the lobe peak heights away from the midline. Equals G up to an
    exp(-2|alpha|^2) correction, negligible for separated lobes.
    """
    xvec = np.asarray(xvec, dtype=float)
    mid = int(np.argmin(np.abs(xvec)))
    fringe = float(np.max(np.abs(W[:, mid])))
    right = W[:, xvec > lobe_exclusion]
    left = W[:, xvec < -lobe_exclusion]
    if right.size == 0 or left.size == 0:
        raise ValueError("grid does not extend past the lobe-exclusion region")
    i_plus = float(right.max())
    i_minus = float(left.max())
    if i_plus <= 0.0 or i_minus <= 0.0:
        raise ValueError("no positive lobe peaks found; not a two-lobe state?")
    return fringe / (2.0 * math.sqrt(i_plus * i_minus))


def wigner_marginal(W: np.ndarray, xvec, pvec, axis: str = "x") -> np.ndarray:
    """Integrate W over one quadrature; axis='x' returns the x marginal."""
    if axis == "x":
        return np.trapezoid(W, np.asarray(pvec, dtype=float), axis=0)
    if axis == "p":
        return np.trapezoid(W, np.asarray(xvec, dtype=float), axis=1)
    raise ValueError(f"axis must be 'x' or 'p', got {axis!r}")
