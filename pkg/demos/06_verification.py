"""Run the full verification report on a few fields.

Each report checks the momentum and continuity equations, the scaling
symmetry, flux, force and torque quadratures and, for spirals, the profile ODE.
"""

# %%
import dataclasses
import math

from spiralflow import GeneralizedSpiral, HamelN0A, verify

for field in (GeneralizedSpiral.build(2, 0.0, 0.5),
              GeneralizedSpiral.build(3, -4 * math.pi, 0.7),
              HamelN0A(-5 * math.pi, 0.0, 1.0)):
    rep = verify(field)
    print(rep.field, "->", "all passed" if rep.all_passed else "FAILED")
    print(f"   momentum {rep.max_momentum_residual:.1e}, divergence {rep.max_divergence:.1e}, "
          f"flux {rep.flux_quad:+.6f}")
    if rep.torque_quad is not None:
        print(f"   torque {rep.torque_quad:.10f} vs formula {rep.torque_formula:.10f}")

# %%  a profile with a nudged root must be caught
f = GeneralizedSpiral.build(2, 0.0, 0.5)
phi1, phi2, phi3 = f.profile.roots
bad = dataclasses.replace(f.profile, roots=(phi1, phi2, phi3 + 1e-3),
                          c_const=-(phi1 * phi2 + (phi1 + phi2) * (phi3 + 1e-3)) / 3)
rep = verify(GeneralizedSpiral(f.params, bad))
print("corrupted profile failures:", [k for k, v in rep.passed.items() if not v])
