#!/usr/bin/env python3
"""The shifted coordinates, the impulsive metric form, and its weak limit.

The matched metric can be rewritten with a Dirac-delta term by passing to
coordinates that jump across the shell.  Regularizing Heaviside/delta with a
mollifier pair makes that form computable; integrating against test
functions shows where it reproduces the Lipschitz metric, and where a joint
regularization cannot (see the final section).
"""

import numpy as np

from nullshell import (TestBump, discontinuous_coordinates, hscript,
                       lipschitz_metric, make_builtin, make_mollifier,
                       parse_jump_expression, regularized_distributional_metric,
                       weak_metric_check)

EPS = (1e-1, 1e-2, 1e-3, 1e-4)
phi = TestBump(width=1.0, power=0)
moll = make_mollifier("poly_bump")
family = make_builtin("example", 3, a=4, b=2, c=1, h0=1.1)
classical = parse_jump_expression("v + (z2^2 - z3^2)/2 + z2*z3", 3)

print("=" * 72)
print("Shifted coordinates across the shell (four-parameter family)")
print("=" * 72)
for u in (-0.5, 0.0, 0.5):
    c = discontinuous_coordinates(family, [u, 0.4, 1.0, 0.5])
    print(f"  u = {u:+.1f}: (U, V, X2, X3) = "
          + "(" + ", ".join(f"{x.value:+.4f}" for x in c) + ")")
print(f"\n  impulsive profile at (v, z) = (0.4, (1, 0.5)): "
      f"{hscript(family, 0.4, [1.0, 0.5]):+.6f}")

print()
print("=" * 72)
print("The regularized metric agrees with the Lipschitz one beyond eps")
print("=" * 72)
pt = np.array([0.4, 0.4, 1.0, 0.5])
for eps in (0.5, 0.2, 0.05):
    gr = regularized_distributional_metric(family, 0.0, moll, eps, pt)
    gl = lipschitz_metric(family, 0.0, pt)
    glv = np.array([[gl[i, j].value for j in range(4)] for i in range(4)])
    print(f"  eps = {eps:.2f} (|u| = 0.4): max |reg - lipschitz| = "
          f"{np.max(np.abs(gr - glv)):.2e}"
          + ("  (inside the transition zone)" if eps > 0.4 else ""))

print()
print("=" * 72)
print("Weak limits against phi(u): classical case (dH/dv = 1)")
print("=" * 72)
res = weak_metric_check(classical, 0.0, "all", phi, 0.3, [0.7, 0.4], EPS)
worst = max(r.residual for r in res.values())
print(f"  all 10 components converge to the Lipschitz pairing; "
      f"max residual = {worst:.2e}")

print()
print("=" * 72)
print("Weak limits: generic family (dH/dv != 1)")
print("=" * 72)
res = weak_metric_check(family, 0.0, "all", phi, 0.0, [1.0, 0.0], EPS)
for (i, j), r in sorted(res.items()):
    tag = "  <-- impulsive direction: joint limit misses the target" \
        if (i, j) == (0, 0) and r.residual > 1e-6 else ""
    print(f"  g_{i}{j}: limit {r.pairing.limit:+.8f}  target {r.target:+.8f}  "
          f"residual {r.residual:.2e}{tag}")

print("""
The uu defect is structural, not numerical: the single joint eps-limit of
the impulsive term involves the triple product theta^2 * delta, whose moment
is int theta^2 rho = 1/3, while the pairwise chain (theta^2 = theta first,
then theta*delta = delta/2) that motivates the impulsive profile uses 1/2.
The two agree exactly when dH/dv = 1, which is why the classical case above
converges in every component.""")
