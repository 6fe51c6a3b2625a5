"""
Tomography of a decohering cat state
====================================

Snapshots of the boundary-mode Wigner function along one propagation run,
for a defect that keeps a bound state. The interference fringes fade to
the frozen residual value instead of dying completely, and the fringe
amplitude read off the photon statistics recovers G(z) without any
tomographic reconstruction.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from catlattice import cat as catmod
from catlattice.lattice import build_defect_lattice, propagate_state, required_truncation

# a modest cat keeps the fringes visible after fractional decoherence
state = catmod.CatState(alpha0=2.0, beta0=-2.0)

# strong detuned defect: one bound state, survival freezes near 0.8
z_max = 8.0
n_sites = required_truncation(1.0, z_max)
model = build_defect_lattice(kappa0=np.sqrt(2.0), sigma0=4.0, num_sites=n_sites)
psi0 = np.zeros(model.num_sites, dtype=complex)
psi0[0] = 1.0
z = np.linspace(0.0, z_max, 801)
amps = propagate_state(model, psi0, z)
trace = catmod.coherence_factor(state, amps[:, 0], z_grid=z)

snapshots = [0.0, 0.25, 1.0, 8.0]
xvec = np.linspace(-6.5, 6.5, 161)
pvec = np.linspace(-6.5, 6.5, 161)

fig = plt.figure(figsize=(13.0, 7.2))
axes_w = [fig.add_subplot(2, 4, k + 1) for k in range(4)]
ax_pn = fig.add_subplot(2, 2, 3)
ax_g = fig.add_subplot(2, 2, 4)

for ax, z_snap in zip(axes_w, snapshots):
    i = int(np.argmin(np.abs(z - z_snap)))
    # the pair (S00, G) must come from the same trace sample; mixing a
    # decayed amplitude with an unrelated G is unphysical and rejected.
    # Using |S00| instead of S00 plots the co-rotating frame, keeping the
    # lobes on the x axis where the visibility estimator expects them;
    # G depends only on |S00|^2 so the pairing is unchanged.
    rho = catmod.reduced_density_matrix(state, abs(amps[i, 0]), trace.G[i])
    W = catmod.wigner_function(rho, xvec, pvec)
    vis = catmod.fringe_visibility(W, xvec, pvec)
    lim = np.abs(W).max()
    ax.pcolormesh(xvec, pvec, W, cmap="RdBu_r", vmin=-lim, vmax=lim)
    ax.set_title(f"$\\kappa z={z[i]:g}$   G={trace.G[i]:.3f}", fontsize=9)
    ax.set_aspect("equal")
    print(f"z = {z[i]:5.2f}: G = {trace.G[i]:.4f}, fringe visibility = {vis:.4f}")

# photon statistics: the even/odd staircase of the fresh cat relaxes
# toward the Poissonian envelope of the incoherent mixture
n = np.arange(0, 15)
for i, lab in [(0, "fresh cat"), (len(z) - 1, "after decoherence")]:
    P = catmod.photon_number_distribution(state, amps[i, 0], float(trace.G[i]), n)
    ax_pn.bar(n + (0.0 if i == 0 else 0.38), P, width=0.36, label=lab)
P_mix = catmod.photon_number_distribution(state, amps[-1, 0], 0.0, n)
ax_pn.plot(n + 0.2, P_mix, "k.", ms=4, label="mixture (G=0)")
ax_pn.set_xlabel("photon number n")
ax_pn.set_ylabel("$P_n$")
ax_pn.legend(fontsize=8)

# the counting estimator G = P_n / P_n^mix - 1 (even n) tracks the exact
# coherence factor pointwise
ax_g.plot(z, trace.G, lw=1.0, label="exact G(z)")
probe = np.linspace(0.0, z_max, 17)
est = []
for z_snap in probe:
    i = int(np.argmin(np.abs(z - z_snap)))
    P2 = catmod.photon_number_distribution(state, amps[i, 0], float(trace.G[i]), 2)
    P2_mix = catmod.photon_number_distribution(state, amps[i, 0], 0.0, 2)
    est.append(catmod.estimate_G_from_counts(float(P2), float(P2_mix)))
ax_g.plot(probe, est, "o", ms=4, fillstyle="none", label="from $P_2$ counts")
ax_g.set_xlabel("$\\kappa z$")
ax_g.set_ylabel("G")
ax_g.legend(fontsize=8)

fig.tight_layout()
fig.savefig("demos/cat_tomography.png", dpi=150)
print("wrote demos/cat_tomography.png")
