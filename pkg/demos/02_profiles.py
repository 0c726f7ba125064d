"""Periodic profiles phi(z) for a handful of parameters.

The profile oscillates between the two lower roots of a cubic, like a
particle in the potential V(phi) = (C phi + 2 phi^2 - phi^3/3) / (1 + a^2).
"""

# %%
import math

import numpy as np

from spiralflow import SolutionParams, build_profile, eval_phi, flux_closed_form
from spiralflow.profile import potential

cases = [(1, -10.0, 0.5), (2, 0.0, 0.5), (3, -4 * math.pi, 0.0), (4, 0.0, 0.3)]
z = np.linspace(0, 2 * math.pi, 1201)
curves = {}
for n, flux, a in cases:
    prof = build_profile(SolutionParams(n, flux, a))
    phi, dphi, _ = eval_phi(prof, z)
    curves[(n, flux, a)] = phi
    phi1, phi2, phi3 = prof.roots
    energy = 0.5 * dphi**2 + potential(prof, phi)
    print(f"n={n} flux={flux:+.3f} a={a}: alpha={prof.alpha:.5f} "
          f"roots=({phi1:.4f}, {phi2:.4f}, {phi3:.4f}) C={prof.c_const:.4f}")
    print(f"    flux back from the roots {flux_closed_form(prof):+.3e}, energy spread {np.ptp(energy):.1e}")

# %%  small a: the n = 2 profile is nearly -4 sqrt(6) a cos(2z)
eps = 1e-3
prof = build_profile(SolutionParams(2, 0.0, eps))
phi = eval_phi(prof, z)[0]
amp = 4 * math.sqrt(6) * eps
print("max |phi + amp cos 2z| / amp =", np.max(np.abs(phi + amp * np.cos(2 * z))) / amp)

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for key, phi in curves.items():
        ax.plot(z, phi, label="n=%d, flux=%.2f, a=%.1f" % key)
    ax.set_xlabel("z")
    ax.set_ylabel("phi")
    ax.legend(fontsize=8)
    fig.savefig("profiles.png", dpi=120, bbox_inches="tight")
    print("wrote profiles.png")
