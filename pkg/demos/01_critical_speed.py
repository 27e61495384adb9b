"""How the spreading speed is read off the dispersion geometry.

A single parameter set is enough to tell the whole story.  Exponential
profiles of the linearised system trace two loci in the (decay-in-y,
rate-in-x) plane: a curve from the road equation and a circle from the
field equation.  Below the critical speed they miss each other; the
spreading speed c* is where they first touch.  For D <= 2d they already
touch at the bare KPP speed and the road is invisible.

Run:  python3 demos/01_critical_speed.py
"""

import numpy as np

import roadfield as rf

params = rf.ModelParams(D=4.0, d=1.0, mu=1.0, nu=1.0, f_prime_0=1.0)
print(f"parameters: D={params.D}, d={params.d}, mu={params.mu}, f'(0)={params.f_prime_0}")
print(f"field-only KPP speed: c_KPP = {rf.c_kpp(params)}")

# The gap function G(c) = max_beta (road branch - field branch) changes sign
# exactly once; its root is the tangency speed.
print("\nsign of the curve gap along a speed ladder:")
for c in (2.05, 2.15, 2.25, 2.35, 2.5):
    g = rf.curve_gap(c, params)
    relation = "curves intersect" if g >= 0 else "curves separated"
    print(f"  c = {c:5.2f}:  G(c) = {g:+.6f}   ({relation})")

result = rf.critical_speed(params, tol=1e-10)
pt = result.tangency
print(f"\ncritical speed: c* = {result.c_star:.10f}  ({result.regime.value})")
print(f"bracket certifying the root: [{result.bracket[0]:.12f}, {result.bracket[1]:.12f}]")
print(f"tangency point: beta* = {pt.beta:.8f}, alpha* = {pt.alpha:.8f} on {pt.branch.value}")

# Just above c* the loci cross at exactly two points; the exponential ansatz
# built at either crossing solves the full three-equation dispersion system.
c_above = result.c_star + 0.05
crossings = rf.intersections(c_above, params)
print(f"\nat c = c* + 0.05 = {c_above:.6f} the loci cross twice:")
for p in crossings.points:
    ansatz = rf.ExponentialAnsatz.at_intersection(c_above, p.beta, params, atol=1e-6)
    res = max(abs(r) for r in ansatz.residuals(params))
    print(f"  beta = {p.beta:+.6f}, alpha = {p.alpha:.6f} ({p.branch.value}); "
          f"system residual {res:.1e}")

# Below 2d the road cannot help, whatever its diffusivity does within range.
print("\nthe D <= 2d regime is exactly pinned at c_KPP:")
for D in (0.0, 1.0, 2.0):
    print(f"  D = {D:3.1f}:  c* = {rf.critical_speed(rf.ModelParams(D=D, d=1.0, mu=1.0)).c_star}")
