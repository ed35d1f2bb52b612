"""
Classical energy surface
========================

In the large-N limit the model reduces to one degree of freedom on a disk
of radius 2. For kappa > 1/3 the surface turns into a double well whose
saddle at the origin sits at the critical energy 0.
"""

import numpy as np

from lmgmqc import energy_surface_grid, fixed_points
from lmgmqc.classical import classical_dos
from _plotting import plt, save

for kappa in (0.1, 2 / 3):
    fp = fixed_points(kappa)
    print(f"kappa = {kappa:.3f}: fixed points {[(p.p, round(p.q, 4)) for p in fp.fixed_points]}, "
          f"minimum energy {fp.fixed_point_energy:.4f}")

# %%
# Approaching the saddle energy the classical DOS grows by a constant per
# decade, i.e. like -ln|eps|.
for d in (1e-2, 1e-3, 1e-4, 1e-5):
    print(f"rho_cl({-d:g}) = {classical_dos(-d, 2 / 3):.4f}   rho_cl({d:g}) = {classical_dos(d, 2 / 3):.4f}")

# %%
if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4.5))
    for ax, kappa in zip(axes, (0.1, 2 / 3)):
        surf = energy_surface_grid(kappa, 301)
        im = ax.contourf(surf.q, surf.p, surf.energy, levels=40, cmap="viridis")
        ax.contour(surf.q, surf.p, surf.energy, levels=[0.0], colors="w")
        ax.set(title=f"kappa = {kappa:.3f}", xlabel="q", ylabel="p", aspect="equal")
        fig.colorbar(im, ax=ax)
    save(fig, "phase_space.png")
