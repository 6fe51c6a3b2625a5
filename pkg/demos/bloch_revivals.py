"""
Bloch oscillations and Zener-damped cat revivals
================================================

A ramped waveguide array makes the radiated field come back: the edge
survival revives once per Bloch period, and with it the cat coherence.
Tunneling into the continuum damps each revival, more strongly for
bigger cats.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from catlattice import cat as catmod
from catlattice.bpm import (BpmGrid, BpmModel, bloch_period, bpm_propagate,
                            solve_fundamental_mode, zener_damping)

# compact ramped array, small enough to run in seconds
model = BpmModel(num_guides=41, gradient=0.1273, device_length=2.2)
grid = BpmGrid(x_min=-0.0332, x_max=0.0332, num_points=1024,
               absorber_width=0.0066)

# launch the fundamental mode of the isolated, unramped reference guide
mode = solve_fundamental_mode(BpmModel(num_guides=1, gradient=0.0), grid)
run = bpm_propagate(model, grid, mode, store_every=40)

z_b = bloch_period(model)
damping = zener_damping(run.z_grid, run.survival_prob)
print(f"Bloch period lambda/(F a) = {z_b:.5f} cm")
print(f"revival spacing measured  = {damping.mean_spacing:.5f} cm")
print(f"revival heights: {np.round(damping.revival_heights, 4)}")
print(f"per-cycle damping ratio   = {damping.damping_ratio:.4f}")

fig, (ax_map, ax_s, ax_g) = plt.subplots(1, 3, figsize=(13.0, 4.0))

# intensity carpet: the field fans out, refocuses at each Bloch period,
# and loses a little amplitude to Zener leakage every cycle
inten = np.abs(run.fields) ** 2
ax_map.pcolormesh(run.x * 1e4, run.field_z, np.sqrt(inten),
                  cmap="magma", shading="auto")
ax_map.set_xlabel("x (um)")
ax_map.set_ylabel("z (cm)")
ax_map.set_title("|u(x, z)|")

ax_s.plot(run.z_grid, run.survival_prob, lw=0.9)
for k in range(1, 4):
    ax_s.axvline(k * z_b, color="gray", lw=0.7, ls=":")
ax_s.set_xlabel("z (cm)")
ax_s.set_ylabel("$|S_{0,0}|^2$")
ax_s.set_title("edge survival, gridlines at $n z_B$")

# the same survival trace decoheres three cat sizes very differently
for nbar, color in [(9, "C0"), (36, "C1"), (144, "C3")]:
    a0 = np.sqrt(float(nbar))
    cat = catmod.CatState(alpha0=a0, beta0=-a0)
    trace = catmod.coherence_factor(cat, run.survival, z_grid=run.z_grid)
    ax_g.semilogy(run.z_grid, np.maximum(trace.G, 1e-30),
                  color=color, label=f"$\\langle n \\rangle = {nbar}$")
    print(f"nbar = {nbar:3d}: G at first revival = "
          f"{trace.G[np.argmin(np.abs(run.z_grid - z_b))]:.3e}")
ax_g.set_xlabel("z (cm)")
ax_g.set_ylabel("G")
ax_g.set_ylim(1e-30, 3.0)
ax_g.legend(fontsize=8)
ax_g.set_title("cat coherence revivals")

fig.tight_layout()
fig.savefig("demos/bloch_revivals.png", dpi=150)
print("wrote demos/bloch_revivals.png")
