"""A spiral field with its streamlines, colored by r |u|.

r |u| is a function of z = theta0 + theta + a log r alone, so the color
pattern is a set of logarithmic spirals; the streamlines are level sets of
the stream function psi = mu log r + Gamma(z).
"""

# %%
import math

import numpy as np

from spiralflow import GeneralizedSpiral, streamline

field = GeneralizedSpiral.build(2, -2.0, 0.5)
print("mu =", field.params.mu, " speed bound r|u| <=", field.speed_bound())

x = np.linspace(-3, 3, 241)
X, Y = np.meshgrid(x, x)
R = np.hypot(X, Y)
R[R == 0] = np.nan
s = field.evaluate(np.nan_to_num(R, nan=1.0), np.arctan2(Y, X))
strength = np.where(np.isnan(R), np.nan, R * np.hypot(s.u_r, s.u_theta))
print("r|u| ranges over", np.nanmin(strength), "to", np.nanmax(strength))

# %%
lines = []
for theta in np.linspace(-math.pi, math.pi, 8, endpoint=False):
    line = streamline(field, (1.0, theta), 15.0, r_min=0.05, r_max=4.0)
    lines.append(line)
    print(f"seed theta={theta:+.2f}: {len(line.points)} points, {line.status}")

# psi stays put along each line
line = lines[0]
r, t = np.hypot(*line.points.T), np.arctan2(line.points[:, 1], line.points[:, 0])
print("psi spread along first line:", np.ptp(field.evaluate(r, t).psi))

# %%
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5.5, 5))
    im = ax.pcolormesh(X, Y, strength, shading="auto", cmap="viridis")
    for line in lines:
        ax.plot(*line.points.T, "k", lw=0.7)
    ax.set_xlim(-3, 3)
    ax.set_ylim(-3, 3)
    ax.set_aspect("equal")
    fig.colorbar(im, label="r |u|")
    fig.savefig("spiral_field.png", dpi=120, bbox_inches="tight")
    print("wrote spiral_field.png")
