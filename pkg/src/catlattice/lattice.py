"""Tight-binding lattice core: exact single-excitation propagation.

The model is a truncated semi-infinite chain of coupled waveguides with a
boundary defect,

    H = sum_j sigma_j |j><j| + sum_j kappa_j (|j><j+1| + |j+1><j|),

and the quantity of interest is the single-photon transfer amplitude
S_{j,0}(z) = <j| exp(-i H z) |0>.  The chain is diagonalized once with a
symmetric tridiagonal eigensolver, so propagation is exact in the truncated
space for arbitrary z sampling (no time-stepping error) and unitary to
machine precision.

Truncation of the semi-infinite bath uses a hard wall placed beyond the
causal horizon of the excitation: the fastest wavefront moves at group
velocity 2*kappa, so ``required_truncation`` sizes the chain such that no
reflection can return to site 0 within the simulated window.

The closed form for the uniform semi-infinite chain (kappa0 = kappa,
sigma0 = 0), obtained by the method of images from the infinite-chain
Bessel solution, is provided as ``uniform_edge_amplitudes`` and serves as
the package's primary propagation oracle:

    c_j(z) = (-i)^j [ J_j(2 kappa z) + J_{j+2}(2 kappa z) ]

with c_0(z) = 2 J_1(2 kappa z) / (2 kappa z).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import jv

from .errors import NumericalContractError


@dataclass
class LatticeModel:
    """A finite real-symmetric tridiagonal tight-binding chain.

    Attributes
    ----------
    num_sites : int
        Truncation length N, including the defect site j = 0.
    couplings : ndarray, shape (N-1,)
        Hopping rates kappa_j >= 0 between sites j and j+1 (inverse length).
    detunings : ndarray, shape (N,)
        Propagation-constant detunings sigma_j (inverse length).
    """

    num_sites: int
    couplings: np.ndarray
    detunings: np.ndarray

    def __post_init__(self):
        self.couplings = np.asarray(self.couplings, dtype=float)
        self.detunings = np.asarray(self.detunings, dtype=float)
        if self.num_sites < 3:
            raise ValueError(f"num_sites must be >= 3, got {self.num_sites}")
        if self.couplings.shape != (self.num_sites - 1,):
            raise ValueError(
                f"couplings must have length num_sites-1 = {self.num_sites - 1}, "
                f"got {self.couplings.shape}"
            )
        if self.detunings.shape != (self.num_sites,):
            raise ValueError(
                f"detunings must have length num_sites = {self.num_sites}, "
                f"got {self.detunings.shape}"
            )
        if not np.all(np.isfinite(self.couplings)) or not np.all(np.isfinite(self.detunings)):
            raise ValueError("lattice parameters must be finite")
        if np.any(self.couplings < 0):
            raise ValueError("couplings must be non-negative")
        if np.any(self.couplings == 0):
            warnings.warn(
                "lattice contains a zero coupling; the chain is split into "
                "disconnected segments",
                stacklevel=2,
            )


@dataclass
class PropagationResult:
    """Amplitudes S_{j,0}(z) on a z grid.

    ``amplitudes[i, j]`` is the amplitude at site j for z_grid[i]; ``survival``
    duplicates column j = 0 for convenience.
    """

    z_grid: np.ndarray
    amplitudes: np.ndarray
    survival: np.ndarray = field(init=False)

    def __post_init__(self):
        self.survival = self.amplitudes[:, 0].copy()


def build_defect_lattice(kappa0: float, sigma0: float, kappa: float = 1.0,
                         num_sites: int = 200) -> LatticeModel:
    """Boundary-defect chain: site 0 detuned by sigma0, coupled by kappa0
    to a uniform bath with hopping kappa and zero detuning.

    Parameters
    ----------
    kappa0 : float
        Defect-to-bath coupling, >= 0.
    sigma0 : float
        Defect detuning.
    kappa : float
        Bath hopping rate, > 0.
    num_sites : int
        Truncation length (see ``required_truncation``).
    """
    if kappa <= 0:
        raise ValueError(f"bath coupling kappa must be positive, got {kappa}")
    if kappa0 < 0:
        raise ValueError(f"defect coupling kappa0 must be >= 0, got {kappa0}")
    if num_sites < 3:
        raise ValueError(f"num_sites must be >= 3, got {num_sites}")
    couplings = np.full(num_sites - 1, float(kappa))
    couplings[0] = float(kappa0)
    detunings = np.zeros(num_sites)
    detunings[0] = float(sigma0)
    return LatticeModel(num_sites, couplings, detunings)


def stark_chain(kappa: float, step: float, num_sites: int) -> LatticeModel:
    """Uniform finite chain with a linear site-energy ramp sigma_j = -step * j.

    This is the tight-binding image of a lattice with a transverse index
    gradient; ``step`` is the Wannier-Stark ladder spacing (the Bloch
    frequency in inverse-length units). Excite the center site with
    ``propagate_state`` to observe exactly periodic revivals.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    couplings = np.full(num_sites - 1, float(kappa))
    detunings = -float(step) * np.arange(num_sites, dtype=float)
    return LatticeModel(num_sites, couplings, detunings)


def hamiltonian_matrix(model: LatticeModel) -> np.ndarray:
    """Dense symmetric tridiagonal matrix of the chain Hamiltonian."""
    h = np.diag(model.detunings)
    idx = np.arange(model.num_sites - 1)
    h[idx, idx + 1] = model.couplings
    h[idx + 1, idx] = model.couplings
    return h


def _eigensystem(model: LatticeModel):
    try:
        return eigh_tridiagonal(model.detunings, model.couplings)
    except Exception as exc:  # pragma: no cover - guarded by model validation
        raise NumericalContractError(f"tridiagonal eigendecomposition failed: {exc}") from exc


def _check_z_grid(z_grid) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z_grid, dtype=float))
    if z.size == 0:
        raise ValueError("z_grid must be non-empty")
    if np.any(z < 0):
        raise ValueError("z_grid must be non-negative")
    if np.any(np.diff(z) <= 0) and z.size > 1:
        raise ValueError("z_grid must be strictly increasing")
    return z


def propagate(model: LatticeModel, z_grid) -> PropagationResult:
    """Evolve the site-0 excitation: S_{j,0}(z) = (exp(-i H z))_{j,0}.

    Uses the full eigendecomposition of the tridiagonal Hamiltonian, so the
    result is exact in the truncated space and the unitarity sum
    sum_j |S_{j,0}|^2 = 1 holds to 1e-10 at every sample (checked).

    Returns
    -------
    PropagationResult
    """
    z = _check_z_grid(z_grid)
    w, v = _eigensystem(model)
    # amplitudes[i, j] = sum_m v[j, m] e^{-i w_m z_i} v[0, m]
    phases = np.exp(-1j * np.outer(z, w))
    amplitudes = phases @ (v * v[0, :]).T
    _assert_unitary(amplitudes)
    return PropagationResult(z_grid=z, amplitudes=amplitudes)


def propagate_state(model: LatticeModel, initial, z_grid) -> np.ndarray:
    """Full-state variant: evolve an arbitrary initial vector.

    Returns the complex amplitude matrix with shape (len(z_grid), num_sites).
    Used for semigroup checks (propagate to z1, restart, continue to z2) and
    for Wannier-Stark chains excited away from site 0.
    """
    z = _check_z_grid(z_grid)
    c0 = np.asarray(initial, dtype=complex)
    if c0.shape != (model.num_sites,):
        raise ValueError(f"initial state must have shape ({model.num_sites},)")
    w, v = _eigensystem(model)
    coeff = v.conj().T @ c0
    phases = np.exp(-1j * np.outer(z, w))
    return (phases * coeff) @ v.T


def _assert_unitary(amplitudes: np.ndarray, tol: float = 1e-10):
    norms = np.sum(np.abs(amplitudes) ** 2, axis=1)
    worst = np.max(np.abs(norms - 1.0))
    if worst > tol:
        raise NumericalContractError(
            f"unitarity violated: max |sum_j |S_j0|^2 - 1| = {worst:.3e} > {tol:.0e}"
        )


def required_truncation(kappa: float, z_max: float, margin: float = 1.25) -> int:
    """Chain length guaranteeing the hard wall stays causally invisible.

    The wavefront emitted at site 0 travels no faster than the maximum group
    velocity 2*kappa, so N = ceil(margin * 2*kappa*z_max) + 10 sites keep any
    wall reflection from reaching site 0 within z_max.
    """
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if z_max <= 0:
        raise ValueError("z_max must be positive")
    if margin < 1:
        raise ValueError("margin must be >= 1")
    return int(math.ceil(margin * 2.0 * kappa * z_max)) + 10


def uniform_edge_amplitudes(kappa: float, z_grid, sites) -> np.ndarray:
    """Closed-form amplitudes for the uniform semi-infinite chain edge.

    Method-of-images solution for kappa0 = kappa, sigma0 = 0 and excitation
    at the edge site j = 0:

        c_j(z) = (-i)^j [ J_j(2 kappa z) + J_{j+2}(2 kappa z) ]

    Shape of the result is (len(z_grid), len(sites)).
    """
    z = np.atleast_1d(np.asarray(z_grid, dtype=float))
    js = np.atleast_1d(np.asarray(sites, dtype=int))
    arg = 2.0 * kappa * z[:, None]
    out = (-1j) ** js[None, :] * (jv(js[None, :], arg) + jv(js[None, :] + 2, arg))
    return out


def uniform_edge_survival(kappa: float, z_grid) -> np.ndarray:
    """S_{0,0}(z) of the uniform semi-infinite chain, 2 J_1(2kz)/(2kz)."""
    z = np.atleast_1d(np.asarray(z_grid, dtype=float))
    arg = 2.0 * kappa * z
    out = np.ones_like(arg)
    nz = arg != 0
    out[nz] = 2.0 * jv(1, arg[nz]) / arg[nz]
    return out
