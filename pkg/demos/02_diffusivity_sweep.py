"""Sweep the road diffusivity across the 2d threshold.

The table below shows the three regimes in one sweep: pinned at c_KPP up to
D = 2d, strictly increasing above it, and approaching the sqrt(D) growth law.
The second part classifies the narrow window (2d, 2d+delta] where even the
upper branches of the two dispersion loci intersect, including the double
root at the window's edge.

Run:  python3 demos/02_diffusivity_sweep.py
"""

import math

import roadfield as rf

params = rf.ModelParams(D=1.0, d=1.0, mu=1.0)

print("critical speed across the threshold (d = mu = f'(0) = 1, threshold 2d = 2):")
print(f"  {'D':>8}  {'c*':>12}  {'c*/sqrt(D)':>12}  regime")
for D in (0.5, 1.0, 2.0, 2.5, 3.0, 4.0, 8.0, 16.0, 64.0, 256.0):
    res = rf.critical_speed(rf.ModelParams(D=D, d=1.0, mu=1.0))
    print(f"  {D:8.1f}  {res.c_star:12.8f}  {res.c_star / math.sqrt(D):12.8f}  {res.regime.value}")

cls = rf.gamma_plus_threshold(rf.ModelParams(D=4.0, d=1.0, mu=1.0))
print(f"\nupper-branch window width: delta = {cls.delta:.12f}"
      f"  (theory caps it below mu*d/f'(0) = 1)")

print("\ninside the window (2d, 2d+delta] the upper branches cross for speeds "
      "in [c~1, c~2]:")
print(f"  {'D':>10}  {'c~1':>12}  {'c~2':>12}")
for frac in (0.25, 0.5, 0.75, 1.0):
    D = 2.0 + frac * cls.delta
    g = rf.gamma_plus_threshold(rf.ModelParams(D=D, d=1.0, mu=1.0))
    print(f"  {D:10.6f}  {g.c_tilde_1:12.8f}  {g.c_tilde_2:12.8f}")
print("  (c~1 rises, c~2 falls; they merge at D = 2d + delta)")

print("\noutside the window the upper branches never meet:")
for D in (2.0, 2.0 + 1.5 * cls.delta, 4.0):
    g = rf.gamma_plus_threshold(rf.ModelParams(D=D, d=1.0, mu=1.0))
    print(f"  D = {D:9.6f}: intersects = {g.intersects}")
