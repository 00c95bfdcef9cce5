#!/usr/bin/env python3
"""Mollifier regularization and the model products theta*delta, theta^2.

Regularizing the Heaviside function by the primitive of the delta-net makes
products like theta*delta well defined as weak limits, and the limits do not
depend on the mollifier: theta*delta = delta/2 even for a tilted bump with
theta_eps(0) != 1/2.
"""

import scipy.integrate as si

from nullshell import (TestBump, heaviside_pairing, make_mollifier,
                       model_product_pairing, one_minus_theta_product,
                       theta_delta_mass)

EPS = (1e-1, 1e-2, 1e-3, 1e-4)
phi = TestBump(width=1.0, power=0)

print("=" * 72)
print("Model products for two mollifiers")
print("=" * 72)
for kind in ("poly_bump", "tilted_bump"):
    moll = make_mollifier(kind)
    print(f"\n  {kind}:  theta_eps(0) = {moll.theta(0.0):.10f}")
    print(f"    mass identity  int theta_eps rho_eps = "
          f"{theta_delta_mass(moll):.16f}  (exactly 1/2 for every eps)")

    r = model_product_pairing("theta", "delta", phi, EPS, moll)
    print(f"    <theta_eps rho_eps, phi> -> {r.limit:.12f}   "
          f"target phi(0)/2 = {0.5 * phi(0.0):.1f}   rate ~ eps^{r.order:.1f}")

    r = model_product_pairing("theta_sq", "one", phi, EPS, moll)
    print(f"    <theta_eps^2, phi>       -> {r.limit:.12f}   "
          f"target <theta, phi> = {heaviside_pairing(phi):.12f}")

    target_om = si.quad(phi, -phi.width, 0.0, epsabs=1e-13)[0]
    for kind2, target in (("one_minus_theta", target_om), ("theta", 0.0),
                          ("delta", 0.5 * phi(0.0))):
        rr = one_minus_theta_product(kind2, phi, EPS, moll)
        print(f"    <(1-theta)*{kind2:16s}, phi> -> {rr.limit:+.12f}   "
              f"target {target:+.12f}")

print()
print("Per-epsilon pairing values for theta*delta (poly_bump):")
r = model_product_pairing("theta", "delta", phi, EPS, make_mollifier("poly_bump"))
for eps, val in zip(r.epsilons, r.values):
    print(f"    eps = {eps:7.1e}:  {val:.12f}")
print(f"    extrapolated limit: {r.limit:.12f}")
