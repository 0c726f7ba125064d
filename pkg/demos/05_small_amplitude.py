"""Small-amplitude solutions against their leading-order series.

Two families at zero flux: n = 1 with a just above sqrt(3), and n = 2 with a
small. Shrinking eps by 100 shows the remainders at work.
"""

# %%
from spiralflow import Case, asymptotic_compare, asymptotic_predict
from spiralflow.diagnostics import REMAINDER_ORDERS

for case, eps_values in ((Case.N1, (1e-4, 1e-6, 1e-8)), (Case.N2, (1e-2, 1e-3, 1e-4))):
    print(case.value, "expected shrink per 100x in eps:",
          {k: round(100**p) for k, p in REMAINDER_ORDERS[case].items()})
    for eps in eps_values:
        pred = asymptotic_predict(case, eps)
        dev = asymptotic_compare(case, eps)
        print(f"  eps={eps:g}: predicted alpha={pred.alpha:.4e}, torque={pred.torque:.4e}")
        print("    relative deviations:", {k: f"{v:.1e}" for k, v in dev.items()})
