"""
Bound states of the defect-lattice Hamiltonian
==============================================

The edge defect supports zero, one, or two states split off from the
tight-binding band. Their energies and residues fix the long-time
plateau of the survival amplitude, so the census below is the whole
story of whether memory survives.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from catlattice import spectrum
from catlattice.lattice import build_defect_lattice, propagate_state

kappa = 1.0

# sweep the defect coupling at two detunings and count bound states
kappa0_grid = np.linspace(0.05, 3.5, 140)
fig, axes = plt.subplots(1, 3, figsize=(12.5, 3.8))

for sigma0, style in [(0.0, "-"), (4.0, "--")]:
    counts = []
    upper_energy = []
    for k0 in kappa0_grid:
        bath = spectrum.BlochBath(kappa=kappa, kappa0=k0, sigma0=sigma0)
        bound = spectrum.find_bound_states(bath)
        counts.append(bound.count)
        upper_energy.append(bound.energies[-1] if bound.count else np.nan)
    axes[0].plot(kappa0_grid, counts, style, label=f"$\\sigma_0={sigma0:g}$")
    axes[1].plot(kappa0_grid, upper_energy, style)

# the sigma0 = 0 threshold sits exactly at kappa0 = sqrt(2) kappa
thr = spectrum.bound_state_threshold(0.0, kappa=kappa)
axes[0].axvline(thr, color="gray", lw=0.7, ls=":")
axes[0].text(thr + 0.05, 0.4, f"threshold {thr:.4f}", fontsize=8)
axes[0].set_xlabel("$\\kappa_0/\\kappa$")
axes[0].set_ylabel("bound states")
axes[0].legend(fontsize=8)

axes[1].axhline(2 * kappa, color="gray", lw=0.7, ls=":")
axes[1].set_xlabel("$\\kappa_0/\\kappa$")
axes[1].set_ylabel("upper bound-state energy")

# check the spectral prediction against direct propagation for the
# strong-coupling point: plateau = sum of squared edge residues
bath = spectrum.BlochBath(kappa=kappa, kappa0=3.0, sigma0=0.0)
bound = spectrum.find_bound_states(bath)
pred = spectrum.asymptotics(bound)
print("bound states at kappa0=3, sigma0=0:")
for E, r in zip(bound.energies, bound.residues):
    print(f"  E = {E:+.6f}   residue = {r:.6f}")
print(f"plateau = {pred.plateau:.6f}, beat period = {pred.revival_period:.6f}")

model = build_defect_lattice(kappa0=3.0, sigma0=0.0, kappa=kappa, num_sites=400)
psi0 = np.zeros(model.num_sites, dtype=complex)
psi0[0] = 1.0
z = np.linspace(0.0, 40.0, 2001)
amps = propagate_state(model, psi0, z)
surv = np.abs(amps[:, 0]) ** 2

axes[2].plot(z, surv, lw=0.9)
axes[2].axhline(pred.plateau, color="k", ls=":", lw=0.8,
                label=f"plateau {pred.plateau:.4f}")
axes[2].set_xlabel("$\\kappa z$")
axes[2].set_ylabel("$|S_{0,0}|^2$")
axes[2].set_title("two-state beating at $\\kappa_0/\\kappa=3$")
axes[2].legend(fontsize=8)

fig.tight_layout()
fig.savefig("demos/bound_state_spectrum.png", dpi=150)
print("wrote demos/bound_state_spectrum.png")
