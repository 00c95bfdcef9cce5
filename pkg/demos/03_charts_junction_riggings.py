#!/usr/bin/env python3
"""Chart maps, junction conditions and the matching riggings.

The plus-side flat chart is reached by a map linear in u whose coefficients
come from first derivatives of H.  Pulling the flat (or conformally flat)
metric back through that map must reproduce the assembled metric exactly;
the junction conditions and the rigging orientation hold on the shell.
"""

import numpy as np

from nullshell import (chart_map, lipschitz_metric, make_builtin,
                       parse_jump_expression, pullback_plus_metric,
                       rigging_minus, rigging_plus, shell_xi_aligning_report,
                       transverse_coefficients, verify_geodesic_extension,
                       verify_junction)

family = make_builtin("example", 3, a=4, b=2, c=1, h0=1.1)
log_cosh = parse_jump_expression("2*v - log(cosh(v))", 3)
rng = np.random.default_rng(2)

print("=" * 72)
print("Transverse coefficients of the plus chart at (v, z) = (0.4, (1, 0.5))")
print("=" * 72)
u1, v1, x1, m, q = transverse_coefficients(family, 0.4, [1.0, 0.5]).values()
print(f"  U1 = {u1:.6f}  V1 = {v1:.6f}  M = {m:.6f}")
print(f"  q = {q}  x1 = {x1}")
print(f"  null identity -2 U1 V1 + |x1|^2 = {-2 * u1 * v1 + x1 @ x1:+.2e}")

print()
print("Plus chart map at u = 0 is the generalized shift (0, H(v,z), z):")
img = chart_map(family, "plus", [0.0, 0.4, 1.0, 0.5])
print(f"  image = {[round(c.value, 6) for c in img]}")

print()
print("=" * 72)
print("Junction conditions at 50 shell samples")
print("=" * 72)
samples = [(rng.uniform(-2, 2), rng.uniform(0.2, 1.8, 2)) for _ in range(50)]
for lam, h in ((0.0, family), (3.0, log_cosh), (-3.0, log_cosh)):
    rep = verify_junction(h, lam, samples)
    print(f"  lambda = {lam:+.0f}: max residual {rep.max_residual:.2e}, "
          f"orientation ok = {rep.orientation_ok}")

print()
print("Riggings at (v, z) = (0.3, (1, 0)):")
print(f"  xi-  = {rigging_minus(0.0, 0.3, [1.0, 0.0], 3)}")
print(f"  xi+  = {rigging_plus(family, 0.0, 0.3, [1.0, 0.0])}")
print("  (both point towards decreasing U: inward for the minus region,")
print("   outward for the plus region)")

print()
print("=" * 72)
print("Pullback identity and geodesic extension")
print("=" * 72)
worst = 0.0
for _ in range(100):
    pt = np.array([rng.uniform(1e-3, 0.8), rng.uniform(-0.8, 0.8),
                   rng.uniform(0.3, 1.2), rng.uniform(0.3, 1.2)])
    pb = pullback_plus_metric(family, 0.0, pt)
    g = lipschitz_metric(family, 0.0, pt)
    gv = np.array([[g[i, j].value for j in range(4)] for i in range(4)])
    worst = max(worst, float(np.max(np.abs(pb - gv))))
print(f"  pullback vs assembled metric, 100 points: max |diff| = {worst:.2e}")

rep = verify_geodesic_extension(3.0, parse_jump_expression("2*v", 3),
                                [np.array([u, 0.3, 0.5, 0.2]) for u in (0.2, 0.6, 1.0)])
print(f"  geodesic extension (lambda = 3): null-norm {rep.max_null_norm:.2e}, "
      f"transport residual {rep.max_geodesic_residual:.2e}, "
      f"u-affinity {rep.max_second_u_derivative:.2e}")

rep = shell_xi_aligning_report(log_cosh, 3.0,
                               [np.concatenate(([v], z)) for v, z in samples[:20]])
print(f"  aligning-isometry conditions on the shell: residuals "
      f"({rep.max_tangent:.2e}, {rep.max_pairing:.2e}, {rep.max_norm:.2e})")
