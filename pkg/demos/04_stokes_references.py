"""The two Stokes far fields: a torque and a force quadrupole.

Both decay like 1/r, solve the Stokes equations away from the origin and carry
no flux. The torque field is a pure clockwise swirl.
"""

# %%
import math

import numpy as np

from spiralflow import StokesQuadrupole, StokesTorque, flux_quadrature, force_torque
from spiralflow.flowfield import momentum_residual

torque = StokesTorque(4 * math.pi)
quad = StokesQuadrupole(4 * math.pi)

r = np.array([0.5, 1.0, 2.0])
print("torque field u_theta at r=0.5,1,2:", torque.evaluate(r, 0 * r).u_theta)
print("quadrupole u_r along theta=0:", quad.evaluate(r, 0 * r).u_r)
print("quadrupole u_r along theta=pi/4:", quad.evaluate(r, 0 * r + math.pi / 4).u_r)

# %%
rng = np.random.default_rng(0)
rr = rng.uniform(0.5, 5, 100)
tt = rng.uniform(-math.pi, math.pi, 100)
for name, f in (("torque", torque), ("quadrupole", quad)):
    res = np.max(np.hypot(*momentum_residual(f, rr, tt)))
    print(f"{name}: Stokes residual {res:.1e}, flux {flux_quadrature(f, 1.0):.1e}, "
          f"torque moment {force_torque(f, 1.0)[1]:.6f}")

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    x = np.linspace(-2, 2, 24)  # even count keeps the origin off the grid
    X, Y = np.meshgrid(x, x)
    R = np.hypot(X, Y)
    fig, axes = plt.subplots(1, 2, figsize=(9, 4.5))
    for ax, f, title in zip(axes, (torque, quad), ("torque", "quadrupole")):
        ux, uy = f.velocity_xy(X, Y)
        ax.quiver(X, Y, ux * R, uy * R)
        ax.set_title(title + " (arrows scaled by r)")
        ax.set_aspect("equal")
    fig.savefig("stokes_references.png", dpi=120, bbox_inches="tight")
    print("wrote stokes_references.png")
