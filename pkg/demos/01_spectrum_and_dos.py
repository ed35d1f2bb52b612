"""
Spectrum and density of states
==============================

The even-parity block of the LMG Hamiltonian is tridiagonal in the Dicke
basis, so even N = 5000 diagonalises in a fraction of a second. Above
kappa_c = 1/3 the density of states piles up at E/N = 0, where the
classical density diverges logarithmically.
"""

import numpy as np

from lmgmqc import KAPPA_C, ModelParams, build_hamiltonian, eigvals
from lmgmqc.dos import compare_to_classical, quantum_dos
from _plotting import plt, save

# %%
# Normalised levels E/N across the coupling range for a modest N.
n = 100
kappas = np.linspace(0, 1, 51)
levels = np.array([eigvals(build_hamiltonian(ModelParams(k, 0.0, n))) / n for k in kappas])
print("ground-state energy per spin at kappa = 1:", levels[-1, 0])

# %%
# Histograms for one coupling on each side of the transition.
hists = {}
for ratio in (0.2, 2.0):
    kappa = ratio * KAPPA_C
    hist = quantum_dos(eigvals(build_hamiltonian(ModelParams(kappa, 0.0, 5000))), 5000, bins=100)
    cmp = compare_to_classical(hist, kappa)
    hists[ratio] = cmp
    centres = np.round(hist.bin_centers[hist.peak_bins()], 4)
    print(f"kappa/kappa_c = {ratio}: L1 to classical = {cmp.l1_distance:.4f}, "
          f"{centres.size} bin(s) share the top count, nearest to 0 at E/N = {centres[np.argmin(np.abs(centres))]}")

# %%
if plt is not None:
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    axes[0].plot(kappas, levels[:, ::2], "k", lw=0.3)
    axes[0].axvline(KAPPA_C, color="r", ls="--")
    axes[0].set(xlabel="kappa", ylabel="E/N")
    for ax, (ratio, cmp) in zip(axes[1:], hists.items()):
        ax.step(cmp.bin_centers, cmp.quantum_density, where="mid", label="quantum")
        ax.plot(cmp.bin_centers, cmp.classical_density, "r", label="classical")
        ax.set(title=f"kappa = {ratio} kappa_c", xlabel="E/N")
        ax.legend()
    save(fig, "spectrum_and_dos.png")
