"""Paraxial beam propagation through a tilted waveguide array.

Solves

    i du/dz = -(1/2 k n_s) d^2u/dx^2 - k [dn(x) + F x] u,

with k = 2 pi / lambda the vacuum wavenumber, n_s the substrate index,
dn(x) the channel profile and F the transverse index gradient, by the
symmetrized split-step spectral method (half potential phase, full kinetic
step in the spectral domain, half potential phase). All lengths are in
centimeters; F carries units of inverse centimeters (index change per cm).

The boundary waveguide observable is the trapped-amplitude overlap
S_00(z) = integral u*(x) u(x, z) dx against the fundamental mode of the
isolated reference guide. Radiation escaping the array (Zener tunneling
into the tilted continuum) is removed by a smooth absorbing layer at the
window edges so it cannot wrap around the periodic spectral domain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.interpolate import CubicSpline
from scipy.linalg import eigh_tridiagonal

from .errors import ConfigError, NumericalContractError

# Exponent of the super-Gaussian channel wall exp(-(2x/w)^8). At the 91%
# duty cycle used here (w = 11.5 um on a 13 um period) this leaves ~14% of
# the peak index midway between channels; steeper walls would suppress that
# background but merge the array into a slit slab whose first band touches
# the continuum, destroying the nearest-neighbor-lattice regime the
# oscillation physics depends on.
CHANNEL_EDGE_ORDER = 8

# fraction of the window each absorber may occupy
_MAX_ABSORBER_FRACTION = 0.15

# steps between spectral-aliasing checks during propagation
_ALIAS_CHECK_EVERY = 400


@dataclass
class BpmModel:
    """Waveguide-array geometry and material parameters (lengths in cm)."""

    wavelength: float = 1.44e-4
    substrate_index: float = 2.1381
    period: float = 13.0e-4
    waveguide_width: float = 11.5e-4
    peak_contrast: float = 1.0e-3
    gradient: float = 0.0
    num_guides: int = 79
    device_length: float = 5.0

    def __post_init__(self):
        for name in ("wavelength", "period", "waveguide_width", "device_length"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.waveguide_width < self.period:
            raise ValueError(
                f"waveguide_width {self.waveguide_width} must lie in "
                f"(0, period={self.period})"
            )
        if self.gradient < 0:
            raise ValueError("gradient F must be >= 0")
        if self.peak_contrast <= 0:
            raise ValueError("peak_contrast must be positive")
        if self.substrate_index <= 1:
            raise ValueError("substrate_index must exceed 1")
        if self.num_guides < 1:
            raise ValueError("num_guides must be >= 1")

    @property
    def vacuum_wavenumber(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def kinetic_coefficient(self) -> float:
        """1 / (2 k n_s), the prefactor of the transverse Laplacian."""
        return 1.0 / (2.0 * self.vacuum_wavenumber * self.substrate_index)


@dataclass
class BpmGrid:
    """Transverse window, step size and absorbing-layer geometry (cm)."""

    x_min: float = -0.06144
    x_max: float = 0.06144
    num_points: int = 2048
    dz: float = 1.0e-4
    absorber_width: float = 0.0092
    absorber_strength: float = 3000.0

    def __post_init__(self):
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        n = self.num_points
        if n < 64 or (n & (n - 1)) != 0:
            raise ValueError(f"num_points must be a power of two >= 64, got {n}")
        if self.dz <= 0:
            raise ValueError("dz must be positive")
        if self.absorber_width < 0 or self.absorber_strength < 0:
            raise ValueError("absorber parameters must be >= 0")
        window = self.x_max - self.x_min
        if self.absorber_width >= _MAX_ABSORBER_FRACTION * window:
            raise ValueError(
                f"absorber_width {self.absorber_width} exceeds "
                f"{_MAX_ABSORBER_FRACTION:.0%} of the window per side"
            )

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.num_points

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.dx * np.arange(self.num_points)

    @property
    def kx(self) -> np.ndarray:
        return 2.0 * math.pi * np.fft.fftfreq(self.num_points, d=self.dx)


@dataclass
class ModeProfile:
    """Fundamental transverse mode of the isolated reference guide."""

    x: np.ndarray
    samples: np.ndarray
    propagation_constant: float


@dataclass
class BpmResult:
    """Propagation record: survival trace, norms and optional field slices."""

    z_grid: np.ndarray
    survival: np.ndarray
    norm: np.ndarray
    final_field: np.ndarray
    x: np.ndarray
    field_z: Optional[np.ndarray] = None
    fields: Optional[np.ndarray] = None
    survival_prob: np.ndarray = field(init=False)

    def __post_init__(self):
        self.survival_prob = np.abs(self.survival) ** 2


@dataclass
class ZenerDamping:
    """Per-cycle revival record extracted from a survival trace."""

    revival_positions: np.ndarray
    revival_heights: np.ndarray
    mean_spacing: float
    damping_ratio: float


def channel_centers(model: BpmModel) -> np.ndarray:
    ng = model.num_guides
    return (np.arange(ng) - 0.5 * (ng - 1)) * model.period


def _channel(x, center, width):
    return np.exp(-((2.0 * (x - center) / width) ** CHANNEL_EDGE_ORDER))


def build_index_profile(model: BpmModel, grid: BpmGrid) -> np.ndarray:
    """Sampled index profile dn(x): identical flat-top channels on period a.

    The tilt contribution F x is *not* included; the propagator adds it
    separately (clamped inside the absorber).
    """
    if grid.dx > model.period / 16.0:
        raise ConfigError(
            f"transverse sampling {grid.dx:.3e} cm is coarser than 16 points "
            f"per period ({model.period / 16.0:.3e} cm); increase num_points"
        )
    centers = channel_centers(model)
    outer_reach = abs(centers).max() + 0.5 * model.waveguide_width
    usable = min(abs(grid.x_min), abs(grid.x_max)) - grid.absorber_width
    if outer_reach > usable:
        raise ConfigError(
            f"grid too narrow for num_guides={model.num_guides}: outermost "
            f"channel reaches |x| = {outer_reach:.4f} cm but the usable "
            f"window ends at {usable:.4f} cm"
        )
    x = grid.x
    dn = np.zeros_like(x)
    for c in centers:
        dn += _channel(x, c, model.waveguide_width)
    return model.peak_contrast * dn


def solve_fundamental_mode(model: BpmModel, grid: BpmGrid,
                           fine_dx: float = 1.0e-6,
                           fine_half_width: float = 60.0e-4) -> ModeProfile:
    """Fundamental mode of the isolated reference guide (array removed, F=0).

    Finite-difference eigenproblem for -(1/2 k n_s) u'' - k dn_W(x) u = mu u
    on a dedicated fine grid, then cubic-spline resampled onto the BPM grid
    and renormalized. A mode counts as bound when mu < -1e-3 * k * dn_max.

    Raises
    ------
    ConfigError
        If the guide supports no bound mode (contrast too low) or more than
        one (contrast too high for single-mode operation).
    """
    k = model.vacuum_wavenumber
    n_fine = int(round(2.0 * fine_half_width / fine_dx)) + 1
    xf = np.linspace(-fine_half_width, fine_half_width, n_fine)
    dxf = xf[1] - xf[0]
    v_pot = -k * model.peak_contrast * _channel(xf, 0.0, model.waveguide_width)
    t = model.kinetic_coefficient / dxf ** 2
    diag = 2.0 * t + v_pot
    off = -t * np.ones(n_fine - 1)
    depth = k * model.peak_contrast
    cutoff = -1.0e-3 * depth
    try:
        vals, vecs = eigh_tridiagonal(
            diag, off, select="v", select_range=(-1.001 * depth, cutoff)
        )
    except Exception as exc:
        raise NumericalContractError(
            f"transverse mode eigensolve failed: {exc}"
        ) from exc
    if len(vals) == 0:
        raise ConfigError(
            f"no bound transverse mode at peak_contrast={model.peak_contrast}; "
            "increase the index contrast"
        )
    if len(vals) > 1:
        raise ConfigError(
            f"guide supports {len(vals)} bound modes at "
            f"peak_contrast={model.peak_contrast}; single-mode operation "
            "requires a lower contrast"
        )
    mu = float(vals[0])
    u_fine = vecs[:, 0]
    if u_fine[np.argmax(np.abs(u_fine))] < 0:
        u_fine = -u_fine
    core = np.abs(u_fine) > 1e-8 * np.abs(u_fine).max()
    if np.any(u_fine[core] < 0):
        raise NumericalContractError("fundamental mode is not node-free")
    u_fine = u_fine / math.sqrt(np.sum(u_fine ** 2) * dxf)
    spline = CubicSpline(xf, u_fine)
    x = grid.x
    u = spline(x)
    u[(x < xf[0]) | (x > xf[-1])] = 0.0
    u = u / math.sqrt(np.sum(u ** 2) * grid.dx)
    return ModeProfile(x=x, samples=u.astype(complex), propagation_constant=mu)


def bloch_period(model: BpmModel) -> float:
    """Oscillation period z_B = lambda / (F a) of the tilted array."""
    if model.gradient == 0.0:
        raise ValueError("F = 0: the oscillation period is infinite")
    return model.wavelength / (model.gradient * model.period)


def tight_binding_step(model: BpmModel) -> float:
    """Site-energy ramp step k F a of the equivalent tight-binding chain."""
    return model.vacuum_wavenumber * model.gradient * model.period


def overlap(bra: np.ndarray, ket: np.ndarray, dx: float) -> complex:
    """Discrete inner product integral conj(bra) * ket dx."""
    return complex(np.vdot(bra, ket) * dx)


def residual_field(mode: ModeProfile, u: np.ndarray, dx: float):
    """Split u into the trapped part S*u0 and the orthogonal remainder.

    Returns (S, g, leak) with g = u - S u0 and leak = |<u0|g>|, which is
    zero by construction of the projection up to rounding.
    """
    s = overlap(mode.samples, u, dx)
    g = u - s * mode.samples
    leak = abs(overlap(mode.samples, g, dx))
    return s, g, leak


def _absorber_profile(grid: BpmGrid) -> np.ndarray:
    """Cubic-ramp absorption coefficient, zero outside the edge layers."""
    gamma = np.zeros(grid.num_points)
    if grid.absorber_width == 0.0 or grid.absorber_strength == 0.0:
        return gamma
    x = grid.x
    w = grid.absorber_width
    left = grid.x_min + w
    right = grid.x_max - w
    lmask = x < left
    rmask = x > right
    gamma[lmask] = grid.absorber_strength * ((left - x[lmask]) / w) ** 3
    gamma[rmask] = grid.absorber_strength * ((x[rmask] - right) / w) ** 3
    return gamma


def bpm_propagate(model: BpmModel, grid: BpmGrid, u0: ModeProfile,
                  store_every: Optional[int] = None) -> BpmResult:
    """Split-step propagation over the device length.

    S_00 and the field norm are recorded at every step; pass `store_every`
    to additionally keep field snapshots each that many steps.

    Raises
    ------
    NumericalContractError
        If the potential phase per step exceeds pi/4 (step size too coarse
        for the tilt/contrast), or if the momentum spectrum develops weight
        near the grid Nyquist edge (radiation aliasing; widen the window or
        refine dx).
    ValueError
        If u0 is not normalized on the grid.
    """
    x = grid.x
    dx = grid.dx
    dz = grid.dz
    k = model.vacuum_wavenumber
    u = np.asarray(u0.samples, dtype=complex).copy()
    norm0 = np.sum(np.abs(u) ** 2) * dx
    if abs(norm0 - 1.0) > 1e-6:
        raise ValueError(f"u0 must be normalized: integral |u0|^2 dx = {norm0}")

    dn = build_index_profile(model, grid)
    xlo = grid.x_min + grid.absorber_width
    xhi = grid.x_max - grid.absorber_width
    tilt = model.gradient * np.clip(x, xlo, xhi)
    v_pot = -k * (dn + tilt)

    max_phase = np.abs(v_pot).max() * dz
    if max_phase > math.pi / 4.0:
        raise NumericalContractError(
            f"potential phase per step {max_phase:.3f} rad exceeds pi/4; "
            f"reduce dz below {math.pi / 4.0 / np.abs(v_pot).max():.3e} cm"
        )

    gamma = _absorber_profile(grid)
    half_step = np.exp(-0.5j * v_pot * dz - 0.5 * gamma * dz)
    kx = grid.kx
    kinetic = np.exp(-1j * model.kinetic_coefficient * kx ** 2 * dz)
    nyq_mask = np.abs(kx) > 0.9 * np.abs(kx).max()

    n_steps = int(math.ceil(model.device_length / dz - 1e-9))
    z_grid = dz * np.arange(n_steps + 1)
    survival = np.empty(n_steps + 1, dtype=complex)
    norm = np.empty(n_steps + 1)
    survival[0] = overlap(u0.samples, u, dx)
    norm[0] = norm0
    snapshots = []
    snapshot_z = []
    if store_every is not None and store_every > 0:
        snapshots.append(u.copy())
        snapshot_z.append(0.0)

    for step in range(1, n_steps + 1):
        u *= half_step
        spec = np.fft.fft(u)
        if step % _ALIAS_CHECK_EVERY == 0:
            total = np.sum(np.abs(spec) ** 2)
            if total > 0:
                tail = np.sum(np.abs(spec[nyq_mask]) ** 2) / total
                if tail > 1e-6:
                    raise NumericalContractError(
                        f"momentum spectrum carries {tail:.2e} of the power "
                        "beyond 0.9x the Nyquist edge at z = "
                        f"{step * dz:.4f} cm; the tilted radiation is "
                        "aliasing - widen the window or increase num_points"
                    )
        spec *= kinetic
        u = np.fft.ifft(spec)
        u *= half_step
        survival[step] = overlap(u0.samples, u, dx)
        norm[step] = np.sum(np.abs(u) ** 2) * dx
        if store_every is not None and store_every > 0 and step % store_every == 0:
            snapshots.append(u.copy())
            snapshot_z.append(step * dz)

    mags = np.abs(survival)
    if np.any(mags > 1.0 + 1e-8):
        raise NumericalContractError(
            f"|S_00| reached {mags.max():.12f} > 1 + 1e-8 during propagation"
        )
    return BpmResult(
        z_grid=z_grid,
        survival=survival,
        norm=norm,
        final_field=u,
        x=x,
        field_z=np.array(snapshot_z) if snapshots else None,
        fields=np.array(snapshots) if snapshots else None,
    )


def zener_damping(z_grid, survival, period_hint: Optional[float] = None) -> ZenerDamping:
    """Revival peaks of |S_00|^2 and the geometric per-cycle damping ratio.

    Peaks are tracked sequentially: the first revival is the global maximum
    after the initial decay, and each subsequent one is searched in a window
    of +-25% of the running period around the expected position. Tracking
    stops at a height increase (beyond rounding) or once peaks fall below 1%
    of the first revival, which screens out the intra-cycle ripple that a
    plain prominence threshold mistakes for revivals.

    Raises
    ------
    ValueError
        If fewer than 2 revival peaks are found.
    """
    z = np.asarray(z_grid, dtype=float)
    s = np.asarray(survival)
    s2 = np.abs(s) ** 2 if np.iscomplexobj(s) else np.asarray(s, dtype=float)
    if z.shape != s2.shape or z.ndim != 1 or len(z) < 5:
        raise ValueError("need matching 1-d z and survival arrays (>= 5 samples)")

    d = np.diff(s2)
    rising = np.nonzero(d > 0)[0]
    if len(rising) == 0:
        raise ValueError(
            "survival trace decays monotonically: fewer than 2 revival peaks"
        )
    i_min = rising[0]

    def interior_peak(j):
        return 0 < j < len(s2) - 1 and s2[j] >= s2[j - 1] and s2[j] >= s2[j + 1]

    j1 = i_min + int(np.argmax(s2[i_min:]))
    if not interior_peak(j1):
        raise ValueError("no interior revival maximum after the initial decay")
    z1, h1 = z[j1], s2[j1]
    positions = [z1]
    heights = [h1]
    period = period_hint if period_hint is not None else z1
    if period <= 0:
        raise ValueError("revival period estimate is not positive")

    while True:
        center = positions[-1] + period
        half = 0.25 * period
        sel = np.nonzero((z >= center - half) & (z <= center + half))[0]
        if len(sel) < 3 or z[-1] < center + half:
            break
        jn = sel[int(np.argmax(s2[sel]))]
        hn = s2[jn]
        # a revival must be a genuine interior maximum; a window-edge grab
        # means the tracker is sliding onto unrelated structure (late-time
        # recurrences of the radiated field), so stop rather than accept it
        if jn == sel[0] or jn == sel[-1] or not interior_peak(jn):
            break
        if hn > heights[-1] * (1.0 + 1e-6):
            break
        if hn < 0.01 * h1:
            break
        positions.append(z[jn])
        heights.append(hn)
        period = (positions[-1] - positions[0]) / (len(positions) - 1)

    if len(positions) < 2:
        raise ValueError(
            f"only {len(positions)} revival peak detected; need at least 2 "
            "(extend the propagation or check that F > 0)"
        )
    positions = np.array(positions)
    heights = np.array(heights)
    spacing = float(np.polyfit(np.arange(len(positions)), positions, 1)[0])
    ratio = float((heights[-1] / heights[0]) ** (1.0 / (len(heights) - 1)))
    return ZenerDamping(
        revival_positions=positions,
        revival_heights=heights,
        mean_spacing=spacing,
        damping_ratio=ratio,
    )
