"""
Diagonal ensemble
=================

With a non-degenerate post-quench spectrum the long-time average of
rho(t) keeps only the eigenbasis populations. Its zero mode peaks and its
rescaled width dips at the critical quench.
"""

import numpy as np

from lmgmqc import ModelParams, build_diagonal_ensemble, d_matrix_map, prepare
from lmgmqc.ensemble import ensemble_scan
from lmgmqc.quench import chi_grid_from_ratios, default_ratio_grid
from _plotting import plt, save

kappa, n = 0.5, 800
ratios = default_ratio_grid()
i0, w_tilde = ensemble_scan(kappa, n, chi_grid_from_ratios(kappa, ratios))
print("I_0(rho_bar) is largest at chi/chi_c =", ratios[np.argmax(i0)])
print("w_tilde has its lowest interior value at chi/chi_c =", ratios[1 + np.argmin(w_tilde[1:-1])])

# %%
maps = {}
for r in (0.2, 1.0, 2.0):
    ens = build_diagonal_ensemble(prepare(ModelParams(kappa, chi_grid_from_ratios(kappa, [r])[0], n)))
    maps[r] = d_matrix_map(ens)
    print(f"chi/chi_c = {r}: spread of D along l = {np.sqrt(maps[r].ell_second_moment()) / n:.4f} N")

if plt is not None:
    fig, axes = plt.subplots(1, 4, figsize=(17, 4))
    for ax, (r, dm) in zip(axes, maps.items()):
        ax.scatter(dm.l_over_n, dm.m_over_n, c=np.abs(dm.value), s=0.2, cmap="magma")
        ax.set(title=f"|D| at chi = {r} chi_c", xlabel="l/N", ylabel="m/N", xlim=(-0.25, 0.25))
    axes[3].plot(ratios, i0 / i0.max(), label="I_0 (scaled)")
    axes[3].plot(ratios, w_tilde / w_tilde.max(), label="w_tilde (scaled)")
    axes[3].set(xlabel="chi / chi_c")
    axes[3].legend()
    save(fig, "diagonal_ensemble.png")
