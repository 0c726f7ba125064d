"""Where do the spiral solutions exist?

For n branches the flux has to stay strictly below the parabola
flux_max(n, a) = pi (n^2 (1 + a^2) - 4). On the parabola the profile
collapses to a constant, above it there is nothing.
"""

# %%
import math

import numpy as np

from spiralflow import DegenerateProfile, NoSolution, SolutionParams, build_profile, flux_bound

a = np.linspace(-3, 3, 241)
for n in (1, 2, 3, 4):
    print(f"n={n}: flux_max at a=0 is {flux_bound(n, 0.0):+.4f}, at a=3 it is {flux_bound(n, 3.0):+.4f}")

# %%  probing a few points around the n = 1 parabola
for flux, aa in [(0.0, 1.0), (0.0, math.sqrt(3)), (0.0, 2.0), (-12.0, 0.0)]:
    try:
        prof = build_profile(SolutionParams(1, flux, aa))
        print(f"(flux={flux:+.2f}, a={aa:.3f}) -> alpha={prof.alpha:.6f}")
    except DegenerateProfile:
        print(f"(flux={flux:+.2f}, a={aa:.3f}) -> on the boundary, constant profile")
    except NoSolution:
        print(f"(flux={flux:+.2f}, a={aa:.3f}) -> outside the region")

# %%  the modulus shrinks to zero as the boundary is approached from below
for delta in (1.0, 1e-2, 1e-4, 1e-8):
    prof = build_profile(SolutionParams(2, flux_bound(2, 0.5) - delta, 0.5))
    print(f"delta={delta:g}: alpha={prof.alpha:.3e}, amplitude={prof.amplitude:.3e}")

# %%  picture (needs matplotlib)
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for n in (1, 2, 3, 4):
        ax.plot(a, [flux_bound(n, x) for x in a], label=f"n={n}")
    ax.axhline(-2 * math.pi, color="k", ls="--", lw=0.8, label="Hamel n=0 exists below")
    ax.axhline(-4 * math.pi, color="k", ls=":", lw=0.8, label="Hamel n=0 decays like 1/r below")
    ax.set_xlabel("a")
    ax.set_ylabel("flux")
    ax.set_ylim(-50, 60)
    ax.legend(fontsize=8)
    fig.savefig("existence_region.png", dpi=120, bbox_inches="tight")
    print("wrote existence_region.png")
