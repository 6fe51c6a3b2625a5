"""Bound states and decay rates of the defect-plus-bath model.

Eliminating the uniform semi-infinite bath maps the defect site onto a
single level dressed by the self-energy

    Sigma(E) = (kappa0^2 / 2 kappa^2) * (E - sgn(E) sqrt(E^2 - 4 kappa^2)),

valid for |E| > 2*kappa, where the branch is fixed by requiring the bath
Green function to decay away from the boundary (the other branch yields
residues above one, which violates the spectral sum rule). Bound states
are the real roots of the pole equation

    E = sigma0 + Sigma(E)

outside the band [-2 kappa, 2 kappa]; their residues

    r_b = 1 / (1 - Sigma'(E_b))

give the fraction of the initial excitation permanently trapped at the
defect. Zero, one or two such roots exist. Their long-z consequences
(fractional plateau of |S_00|^2, or beating between a bound pair) are
summarized by ``asymptotics``.

The bath dispersion omega(q) = 2 kappa cos(q) and coupling
g(q) = kappa0 sqrt(2/pi) sin(q) also yield the weak-coupling golden-rule
decay rate, which reduces to gamma = 2 kappa0^2 / kappa exactly at
sigma0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import NumericalContractError


@dataclass
class BlochBath:
    """Uniform semi-infinite bath plus boundary defect.

    kappa is the bulk hopping, kappa0 the defect coupling and sigma0 the
    defect detuning (all inverse lengths).
    """

    kappa: float
    kappa0: float
    sigma0: float = 0.0

    def __post_init__(self):
        if self.kappa <= 0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if self.kappa0 < 0:
            raise ValueError(f"kappa0 must be >= 0, got {self.kappa0}")

    def omega(self, q):
        """Bath dispersion omega(q) = 2 kappa cos q."""
        return 2.0 * self.kappa * np.cos(q)

    def g(self, q):
        """Defect-bath coupling g(q) = kappa0 sqrt(2/pi) sin q."""
        return self.kappa0 * math.sqrt(2.0 / math.pi) * np.sin(q)

    @property
    def band_edges(self):
        return (-2.0 * self.kappa, 2.0 * self.kappa)


@dataclass
class BoundStateSet:
    energies: np.ndarray
    residues: np.ndarray
    count: int


@dataclass
class AsymptoticPrediction:
    """Long-z structure of |S_00(z)|^2 implied by the bound states.

    plateau is the time-averaged limit; for a bound pair the trace
    oscillates forever between envelope_min and envelope_max with the
    stated period (up to decaying continuum corrections).
    """

    plateau: float
    revival_period: Optional[float] = None
    envelope_min: Optional[float] = None
    envelope_max: Optional[float] = None


def markovian_rate(bath: BlochBath) -> float:
    """Weak-coupling decay rate gamma = 2 kappa0^2 / kappa."""
    return 2.0 * bath.kappa0 ** 2 / bath.kappa


def golden_rule_rate(bath: BlochBath) -> float:
    """Fermi-golden-rule rate 2 pi g(q0)^2 / |omega'(q0)| at omega(q0) = sigma0.

    Raises ValueError when sigma0 lies outside the band (no resonant bath
    mode; decay is non-exponential from the start) or within 1e-9 relative
    of a band edge (the group velocity vanishes and the rate formula
    degenerates).
    """
    s = bath.sigma0 / (2.0 * bath.kappa)
    if abs(abs(s) - 1.0) < 1e-9:
        raise ValueError(
            "sigma0 sits at a band edge; the golden-rule rate degenerates "
            "(vanishing bath group velocity)"
        )
    if abs(s) > 1.0:
        raise ValueError(
            f"sigma0 = {bath.sigma0} lies outside the band "
            f"[-2 kappa, 2 kappa] = [{-2 * bath.kappa}, {2 * bath.kappa}]; "
            "no resonant bath mode exists"
        )
    q0 = math.acos(s)
    group_velocity = abs(2.0 * bath.kappa * math.sin(q0))
    return 2.0 * math.pi * float(bath.g(q0)) ** 2 / group_velocity


def self_energy(E, kappa0: float, kappa: float):
    """Defect self-energy on the real axis outside the band (|E| > 2 kappa)."""
    E = np.asarray(E, dtype=float)
    root = np.sqrt(np.maximum(E * E - 4.0 * kappa * kappa, 0.0))
    return (kappa0 ** 2 / (2.0 * kappa ** 2)) * (E - np.sign(E) * root)


def self_energy_prime(E, kappa0: float, kappa: float):
    E = np.asarray(E, dtype=float)
    root = np.sqrt(np.maximum(E * E - 4.0 * kappa * kappa, 0.0))
    return (kappa0 ** 2 / (2.0 * kappa ** 2)) * (1.0 - np.sign(E) * E / root)


def band_edge_residuals(bath: BlochBath):
    """Pole-equation values f(E) = E - sigma0 - Sigma(E) at the band edges.

    Closed forms: f(+2k) = 2k - sigma0 - kappa0^2/k and
    f(-2k) = -2k - sigma0 + kappa0^2/k.  An upper (lower) bound state
    exists iff f(+2k) < 0 (f(-2k) > 0); a zero marks the detachment
    threshold.
    """
    k, k0, s0 = bath.kappa, bath.kappa0, bath.sigma0
    return 2.0 * k - s0 - k0 ** 2 / k, -2.0 * k - s0 + k0 ** 2 / k


def find_bound_states(bath: BlochBath) -> BoundStateSet:
    """Locate all discrete eigenvalues outside the band and their residues.

    The pole equation f(E) = E - sigma0 - Sigma(E) is strictly increasing on
    each side of the band, so existence reduces to a sign check just outside
    the edge and the root is bracketed between the edge and
    2k + |sigma0| + 2 kappa0^2/kappa + 10k.

    Returns
    -------
    BoundStateSet
        energies sorted ascending; residues aligned with energies;
        count in {0, 1, 2}.
    """
    k, k0, s0 = bath.kappa, bath.kappa0, bath.sigma0
    if k0 == 0.0:
        # decoupled defect: the pole equation degenerates to E = sigma0,
        # a bound state only if the bare level sits outside the band
        if abs(s0) > 2.0 * k:
            return BoundStateSet(np.array([s0]), np.array([1.0]), 1)
        return BoundStateSet(np.array([]), np.array([]), 0)

    def f(E):
        return float(E - s0 - self_energy(E, k0, k))

    far = 2.0 * k + abs(s0) + 2.0 * k0 ** 2 / k + 10.0 * k
    energies = []
    # just outside each edge; f has infinite slope at the edge itself, so the
    # sign there decides existence robustly even at the exact threshold
    upper_probe = 2.0 * k * (1.0 + 1e-13)
    lower_probe = -2.0 * k * (1.0 + 1e-13)
    if f(upper_probe) < 0.0:
        energies.append(brentq(f, upper_probe, far, xtol=1e-15, rtol=8.9e-16))
    if f(lower_probe) > 0.0:
        energies.append(brentq(f, -far, lower_probe, xtol=1e-15, rtol=8.9e-16))
    energies = np.sort(np.array(energies))
    for e in energies:
        resid = abs(f(e))
        if resid > 1e-10:
            raise NumericalContractError(
                f"pole-equation residual {resid:.3e} at E = {e} exceeds 1e-10"
            )
    residues = np.array(
        [1.0 / (1.0 - float(self_energy_prime(e, k0, k))) for e in energies]
    )
    return BoundStateSet(energies, residues, len(energies))


def bound_state_threshold(sigma0: float, kappa: float = 1.0, side: str = "upper",
                          tol: float = 1e-4) -> float:
    """Detachment threshold in kappa0, located by bisection on the count.

    For side='upper' this is the kappa0 above which a state detaches from
    the top band edge (analytically sqrt(kappa * (2 kappa - sigma0)) when
    that is real); the function measures it from the census rather than
    trusting the closed form.
    """

    def has_state(k0):
        bs = find_bound_states(BlochBath(kappa, k0, sigma0))
        if side == "upper":
            return bool(np.any(bs.energies > 2.0 * kappa))
        return bool(np.any(bs.energies < -2.0 * kappa))

    lo, hi = 0.0, 10.0 * kappa + abs(sigma0)
    if has_state(lo) or not has_state(hi):
        raise ValueError("threshold is not bracketed on [0, 10k + |sigma0|]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if has_state(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def asymptotics(bound: BoundStateSet) -> AsymptoticPrediction:
    """Map a bound-state census to the long-z behavior of |S_00|^2.

    count 0: full decay, plateau 0. count 1: fractional trapping at r1^2.
    count 2: persistent beating with period 2 pi / |E1 - E2| between
    (r1 - r2)^2 and (r1 + r2)^2, time average r1^2 + r2^2.
    """
    if bound.count == 0:
        return AsymptoticPrediction(plateau=0.0)
    if bound.count == 1:
        r1 = float(bound.residues[0])
        return AsymptoticPrediction(plateau=r1 * r1)
    r1, r2 = (float(r) for r in bound.residues)
    de = abs(float(bound.energies[1] - bound.energies[0]))
    return AsymptoticPrediction(
        plateau=r1 * r1 + r2 * r2,
        revival_period=2.0 * math.pi / de,
        envelope_min=(r1 - r2) ** 2,
        envelope_max=(r1 + r2) ** 2,
    )
