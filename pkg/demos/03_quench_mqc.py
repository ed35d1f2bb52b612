"""
Evolved MQC spectra after a quench
==================================

Starting from the ground state at kappa = 0.5 we switch the coupling by
chi and follow the multiple-quantum-coherence spectrum {I_l(t)} with
respect to Jz. A weak quench leaves a simple, slowly breathing spectrum;
the critical quench chi_c scrambles it.
"""

import numpy as np

from lmgmqc import ModelParams, critical_quench_strength, mqc_trajectory, prepare
from _plotting import plt, save

kappa, n = 0.5, 400
chi_c = critical_quench_strength(kappa)
times = np.arange(0.0, 401.0, 20.0)

maps = {}
for ratio in (0.2, 1.0, 2.0):
    setup = prepare(ModelParams(kappa, ratio * chi_c, n))
    spectra, pops = mqc_trajectory(setup, times, return_populations=True)
    stack = np.array([s.intensities for _, s in spectra])
    maps[ratio] = (spectra[0][1].ells, stack, pops, setup.labels)
    print(f"chi/chi_c = {ratio}: time variance of the spectrum {np.var(stack, axis=0).sum():.3e}, "
          f"E1/N = {setup.initial_energy() / n:+.2e}")

# %%
if plt is not None:
    fig, axes = plt.subplots(2, 3, figsize=(14, 7))
    for col, (ratio, (ells, stack, pops, m)) in enumerate(maps.items()):
        for k in (0, len(times) // 2, len(times) - 1):
            axes[0, col].plot(ells / n, stack[k], label=f"t = {times[k]:g}")
        axes[0, col].set(title=f"chi = {ratio} chi_c", xlabel="l/N", ylabel="I_l", xlim=(-0.5, 0.5))
        axes[0, col].legend()
        axes[1, col].pcolormesh(times, m / n, np.log(pops.T + 1e-300), vmin=-30, shading="auto")
        axes[1, col].set(xlabel="t", ylabel="m/N")
    save(fig, "quench_mqc.png")
