#!/usr/bin/env python3
"""The matched metric in the null chart, and its curvature checks.

Away from the shell the matched metric must be exactly flat (or of constant
curvature for nonzero cosmological constant): on the plus side it is just
the flat metric written in shell-adapted coordinates.  The kink at u = 0 is
where the shell lives: the transverse jump of the u-derivative reproduces
the jump tensor.
"""

import numpy as np

from nullshell import (constant_curvature_residual, jump_tensor_minkowski,
                       lipschitz_metric, lipschitz_metric_field, make_builtin,
                       riemann_at, signature_of)

family = make_builtin("example", 3, a=4, b=2, c=1, h0=1.1)
rng = np.random.default_rng(1)

print("=" * 72)
print("Curvature of the assembled metric (should be round-off only)")
print("=" * 72)
for lam in (0.0, 3.0, -3.0):
    fld = lipschitz_metric_field(family, lam)
    worst = 0.0
    for _ in range(20):
        pt = np.array([rng.choice([-1, 1]) * rng.uniform(0.05, 0.8),
                       rng.uniform(-0.8, 0.8),
                       rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)])
        worst = max(worst, constant_curvature_residual(fld, pt, lam / 3.0))
    kind = {0.0: "flat", 3.0: "de Sitter", -3.0: "anti-de Sitter"}[lam]
    print(f"  lambda = {lam:+.0f} ({kind:14s}): max residual vs K = lambda/3 "
          f"over 20 points = {worst:.2e}")

print()
print("=" * 72)
print("Metric components near the shell (lambda = 0)")
print("=" * 72)
pt_shell = np.array([0.0, 0.4, 1.0, 0.5])
for u in (-0.25, 0.0, 0.25):
    pt = pt_shell.copy()
    pt[0] = u
    g = lipschitz_metric(family, 0.0, pt)
    gv = np.array([[g[i, j].value for j in range(4)] for i in range(4)])
    print(f"\n  u = {u:+.2f}: signature {signature_of(gv)}, "
          f"g_vv = {gv[1, 1]:+.6f}, g_vz2 = {gv[1, 2]:+.6f}, "
          f"g_z2z2 = {gv[2, 2]:+.6f}")

print()
print("=" * 72)
print("The u-derivative jump across the shell encodes [Y_ab]")
print("=" * 72)
v, z = 0.4, np.array([1.0, 0.5])
pt = np.concatenate(([0.0, v], z))
gp = lipschitz_metric(family, 0.0, pt, order=1, side="plus")
gm = lipschitz_metric(family, 0.0, pt, order=1, side="minus")
e_u = (1, 0, 0, 0)
jump = np.array([[-0.5 * (gp[i, j].partial(e_u) - gm[i, j].partial(e_u))
                  for j in range(1, 4)] for i in range(1, 4)])
y = jump_tensor_minkowski(family, v, z)
print(f"\n  max |(-1/2) [d_u g] - [Y]| = {np.max(np.abs(jump - y)):.2e}")

print()
print("Riemann tensor on the plus side (flat case), sampled:")
fld = lipschitz_metric_field(family, 0.0)
print(f"  max |R| at (0.5, 0.3, 0.7, 0.4) = "
      f"{np.max(np.abs(riemann_at(fld, [0.5, 0.3, 0.7, 0.4]))):.2e}")
