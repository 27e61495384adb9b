"""The square-root growth law for very diffusive roads.

As D grows, c*(D)/sqrt(D) settles monotonically onto the speed of a
limiting tangency problem that no longer involves D at all, and whose
square is provably confined to [sqrt(4 mu^2 + f'(0)^2) - 2 mu, f'(0)].
The second table shows how the exchange rate mu moves that limit: flushing
the road faster (large mu) erases the enhancement, holding on longer
(small mu) pushes it to the ceiling sqrt(f'(0)).

Run:  python3 demos/03_sqrt_D_asymptotics.py
"""

import math

import roadfield as rf

base = rf.ModelParams(D=1.0, d=1.0, mu=1.0)
c_inf = rf.limit_speed(base, tol=1e-12)
lo, hi = rf.limit_bounds(base)

print(f"limiting speed: lim c*/sqrt(D) = {c_inf:.12f}")
print(f"proven window for its square: [{lo:.12f}, {hi:.12f}]; "
      f"actual square = {c_inf**2:.12f}")

print("\nconvergence of the finite-D ratios (d = mu = f'(0) = 1):")
print(f"  {'D':>10}  {'c*/sqrt(D)':>16}  {'gap to limit':>14}")
for D in (1e2, 1e3, 1e4, 1e5, 1e6):
    ratio = rf.critical_speed(rf.ModelParams(D=D, d=1.0, mu=1.0), tol=1e-10).c_star / math.sqrt(D)
    print(f"  {D:10.0f}  {ratio:16.12f}  {ratio - c_inf:14.3e}")

print("\nhow the exchange rate shapes the prefactor:")
print(f"  {'mu':>8}  {'lim c*/sqrt(D)':>16}  {'window for square':>28}")
for mu in (0.01, 0.1, 1.0, 10.0, 100.0):
    p = rf.ModelParams(D=1.0, d=1.0, mu=mu)
    c = rf.limit_speed(p, tol=1e-10)
    wlo, whi = rf.limit_bounds(p)
    print(f"  {mu:8.2f}  {c:16.10f}  [{wlo:.10f}, {whi:.6f}]")
