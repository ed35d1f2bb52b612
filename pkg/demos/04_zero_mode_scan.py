"""
Zero-mode maximum across the critical quench
============================================

I_0(t) is the inverse participation ratio of the evolved state in the Jz
basis. Its early-time maximum over t in [0, 30] changes abruptly near
chi = chi_c for every system size.
"""

import numpy as np

from lmgmqc import ModelParams, i0_max_scan, i0_trajectory, prepare
from lmgmqc.quench import chi_grid_from_ratios, default_ratio_grid
from _plotting import plt, save

kappa = 0.5
ratios = default_ratio_grid()
scans = {n: i0_max_scan(kappa, n, chi_grid_from_ratios(kappa, ratios)) for n in (200, 400, 800)}
for n, vals in scans.items():
    k = int(np.argmax(np.abs(np.diff(vals))))
    print(f"N = {n}: steepest change between chi/chi_c = {ratios[k]:.2f} and {ratios[k + 1]:.2f}")

# %%
times = np.linspace(0, 2000, 8001)
series = i0_trajectory(prepare(ModelParams(kappa, chi_grid_from_ratios(kappa, [1.0])[0], 400)), times)

if plt is not None:
    fig, (a, b) = plt.subplots(1, 2, figsize=(11, 4))
    a.plot(times, series, lw=0.5)
    a.set(xlabel="t", ylabel="I_0", title="N = 400, chi = chi_c")
    for n, vals in scans.items():
        b.plot(ratios, vals, "o-", ms=3, label=f"N = {n}")
    b.set(xlabel="chi / chi_c", ylabel="max I_0 over [0, 30]")
    b.legend()
    save(fig, "zero_mode_scan.png")
