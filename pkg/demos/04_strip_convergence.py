"""Critical speeds when the field is a strip of finite height.

Cutting the field off at height L (zero density on the lid) weakens the
reservoir feeding the road, so the threshold speed c*^L sits strictly
between c_KPP and the half-plane speed c*, and climbs to c* exponentially
fast as the lid recedes.  Too thin a strip has no threshold above c_KPP at
all; the solver reports that instead of extrapolating.

Run:  python3 demos/04_strip_convergence.py
"""

import roadfield as rf
from roadfield.errors import NoTangencyError

params = rf.ModelParams(D=4.0, d=1.0, mu=1.0)
c_star = rf.critical_speed(params, tol=1e-12).c_star
print(f"half-plane speed for D=4: c* = {c_star:.12f}  (c_KPP = {rf.c_kpp(params)})")

print("\nstrip thresholds rise to c* as the lid recedes:")
print(f"  {'L':>5}  {'c*^L':>16}  {'c* - c*^L':>12}")
for L in (2, 5, 10, 20, 40, 80):
    c_L = rf.strip_critical_speed(params, L, tol=1e-12).c_star
    print(f"  {L:5.0f}  {c_L:16.12f}  {c_star - c_L:12.3e}")

print("\na strip can be too thin to carry any enhancement:")
thin = rf.ModelParams(D=2.5, d=1.0, mu=1.0)
for L in (2.0, 0.5, 0.05):
    try:
        c_L = rf.strip_critical_speed(thin, L, tol=1e-10).c_star
        print(f"  D=2.5, L={L:5.2f}: c*^L = {c_L:.10f}")
    except NoTangencyError as exc:
        print(f"  D=2.5, L={L:5.2f}: {exc}")
