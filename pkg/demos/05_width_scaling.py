"""
Long-time averaged width and its finite-size drift
==================================================

The width w(t) = sqrt(sum_l l^2 I_l) averaged over [1e4, 1.1e4] peaks
close to chi_c, and the peak creeps towards it as N grows. This takes a
few seconds per system size.
"""

import numpy as np

from lmgmqc import peak_location_scaling
from lmgmqc.quench import default_ratio_grid, prominent_peaks
from _plotting import plt, save

kappa = 1.6 / 3
sizes = [200, 400, 800, 1600]
ratios = default_ratio_grid()
res = peak_location_scaling(kappa, sizes, ratios)

for n, peak, row in zip(sizes, res.chi_max_ratios, res.w_bar):
    print(f"N = {n:5d}: chi_max/chi_c = {peak:.4f}  ({len(prominent_peaks(row))} prominent peak)")
print(f"|chi_max/chi_c - 1| ~ {res.fit.prefactor:.3f} N^-{res.fit.exponent:.3f}  (R^2 = {res.fit.r_squared:.3f})")

# %%
if plt is not None:
    fig, (a, b) = plt.subplots(1, 2, figsize=(11, 4))
    for n, row in zip(sizes, res.w_bar):
        a.plot(ratios, row / n, label=f"N = {n}")
    a.set(xlabel="chi / chi_c", ylabel="w_bar / N")
    a.legend()
    nn = np.geomspace(150, 2000)
    b.loglog(sizes, res.deviations, "o")
    b.loglog(nn, res.fit(nn), "--")
    b.set(xlabel="N", ylabel="|chi_max/chi_c - 1|")
    save(fig, "width_scaling.png")
