"""Assembly of the matched metric: Lipschitz form, Rosen form, and the
regularized distributional form.

The Lipschitz metric on the null chart (u, v, z) is flat/conformal for
u < 0 and acquires kink terms linear in u_+ built from the jump tensor and
the pressure for u >= 0; dividing by the Lipschitz conformal factor Q covers
the constant-curvature case.  The distributional route replaces the kink by
coordinates that jump across the shell; its epsilon-regularization
substitutes a mollified Heaviside/delta pair into those coordinates and into
the impulsive metric term, with every differential taken by jet arithmetic.
"""

from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .errors import (ConformalFactorZero, NonPositiveDerivative, NotWaveType,
                     WrongDimension)
from .jets import JetScalar, jet_space
from .jump_functions import JumpFunction
from .tensor_core import MetricField


def _lifted_h(h: JumpFunction, point, order: int):
    """H and its first v-derivative as jets over the (u, v, z) chart."""
    dim = h.dim_n + 1
    sp = jet_space(dim, order)
    hj = h.jets(point[1], point[2:], order=min(order + 1, 4))
    h_lift = hj.truncated(order).embed(sp, range(1, dim))
    dv = hj.derivative(0).truncated(order).embed(sp, range(1, dim))
    if dv.value <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv.value} <= 0 at {tuple(point)!r}")
    return sp, h_lift, dv


def _jump_jets(h: JumpFunction, point, order: int):
    """[Y_ab] and p as jets over the (u, v, z) chart (u-independent)."""
    n = h.dim_n
    dim = n + 1
    sp = jet_space(dim, order)
    hj = h.jets(point[1], point[2:], order=min(order + 2, 4))
    dv_small = hj.derivative(0)
    if dv_small.value <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv_small.value} <= 0 at {tuple(point)!r}")
    inv_dv = dv_small.truncated(min(order + 1, dv_small.space.order)).reciprocal()
    y = np.empty((n, n), dtype=object)
    for a in range(n):
        for b in range(a, n):
            second = hj.derivative(a).derivative(b)
            val = -(second * inv_dv.truncated(second.space.order))
            val = val.truncated(order).embed(sp, range(1, dim))
            y[a, b] = y[b, a] = val
    return sp, y


def lipschitz_metric(h: JumpFunction, lam: float, point, order: int = 2,
                     side: str = "auto") -> np.ndarray:
    """Matrix of jets of the matched metric at a null-chart point.

    For u < 0 this is the flat/conformal metric; for u >= 0 the kink terms
    apply (side "auto" picks the branch from the sign of u, with u = 0 on
    the plus side; each branch is smooth, the matched metric is Lipschitz).
    """
    point = np.asarray(point, dtype=float)
    n = h.dim_n
    dim = n + 1
    if side == "auto":
        side = "plus" if point[0] >= 0.0 else "minus"
    sp = jet_space(dim, order)
    coords = sp.point(point)
    u = coords[0]
    zero = sp.constant(0.0)
    g = np.empty((dim, dim), dtype=object)
    for i in range(dim):
        for j in range(dim):
            g[i, j] = zero
    g[0, 1] = g[1, 0] = sp.constant(-1.0)
    for a in range(2, dim):
        g[a, a] = sp.constant(1.0)

    if side == "plus":
        _, y = _jump_jets(h, point, order)
        p = y[0, 0]
        nt = n - 1
        yv = [y[0, 1 + a] for a in range(nt)]
        # g_vv += u_+ (u sum_A Y_vA^2 - 2p)
        acc = zero
        for a in range(nt):
            acc = acc + yv[a] * yv[a]
        g[1, 1] = g[1, 1] + u * (u * acc - 2.0 * p)
        # g_vA += u_+ (u sum_B Y_vB Y_AB - 2 Y_vA)
        for a in range(nt):
            acc = zero
            for b in range(nt):
                acc = acc + yv[b] * y[1 + a, 1 + b]
            val = u * (u * acc - 2.0 * yv[a])
            g[1, 2 + a] = g[1, 2 + a] + val
            g[2 + a, 1] = g[1, 2 + a]
        # g_AB += -2 u_+ (Y_AB - (u/2) sum_I Y_IA Y_IB)
        for a in range(nt):
            for b in range(a, nt):
                acc = zero
                for i in range(nt):
                    acc = acc + y[1 + i, 1 + a] * y[1 + i, 1 + b]
                val = u * (u * acc - 2.0 * y[1 + a, 1 + b])
                g[2 + a, 2 + b] = g[2 + a, 2 + b] + val
                g[2 + b, 2 + a] = g[2 + a, 2 + b]

    if lam != 0.0:
        q = lipschitz_conformal_factor(h, lam, point, order=order, side=side)
        if abs(q.value) < 1e-12:
            raise ConformalFactorZero(f"Q = {q.value} at {tuple(point)!r}")
        inv_q2 = q.reciprocal()
        inv_q2 = inv_q2 * inv_q2
        for i in range(dim):
            for j in range(dim):
                g[i, j] = g[i, j] * inv_q2
    return g


def lipschitz_conformal_factor(h: JumpFunction, lam: float, point,
                               order: int = 2, side: str = "auto") -> JetScalar:
    """The Lipschitz function Q: Omega_- for u < 0, Omega_+ for u >= 0."""
    point = np.asarray(point, dtype=float)
    dim = h.dim_n + 1
    if side == "auto":
        side = "plus" if point[0] >= 0.0 else "minus"
    sp = jet_space(dim, order)
    coords = sp.point(point)
    u, v = coords[0], coords[1]
    zs = coords[2:]
    z2 = zs[0] * zs[0]
    for zj in zs[1:]:
        z2 = z2 + zj * zj
    q = 1.0 + (lam / 12.0) * (z2 - 2.0 * u * v)
    if side == "plus":
        sp2, h_lift, dv = _lifted_h(h, point, order)
        u1 = dv.reciprocal()
        grads = []
        hj = h.jets(point[1], point[2:], order=min(order + 1, 4))
        for a in range(h.dim_n - 1):
            grads.append(hj.derivative(1 + a).truncated(order).embed(sp, range(1, dim)))
        m = grads[0] * grads[0]
        for gq in grads[1:]:
            m = m + gq * gq
        m = m * 0.5
        v1 = m * u1
        x1 = [gq * u1 for gq in grads]
        acc = zs[0] * x1[0]
        for a in range(1, len(zs)):
            acc = acc + zs[a] * x1[a]
        xx = x1[0] * x1[0]
        for b in x1[1:]:
            xx = xx + b * b
        extra = acc + (u * 0.5) * xx - u1 * (h_lift + u * v1) + v
        q = q + (lam / 6.0) * (u * extra)
    return q


def lipschitz_metric_field(h: JumpFunction, lam: float = 0.0,
                           side: str = "auto") -> MetricField:
    """The matched metric as a MetricField on the null chart."""

    def component_fn(point, order):
        return lipschitz_metric(h, lam, point, order=order, side=side)

    return MetricField(chart="null_coords", dim=h.dim_n + 1,
                       component_fn=component_fn,
                       label=f"matched(lam={lam})")


# -- the impulsive-term profile ------------------------------------------------------

def hscript(h: JumpFunction, v: float, z) -> float:
    """Coefficient of the impulsive metric term:
    dH_v (1 + dH_v) / (1 + dH_v^2) * (H - v)."""
    n = h.dim_n
    j = h.jets(v, z, order=1)
    dv = j.partial((1,) + (0,) * (n - 1))
    if dv <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv} <= 0 at v={v}, z={z}")
    return dv * (1.0 + dv) / (1.0 + dv * dv) * (j.value - v)


# -- Rosen form (4-dimensional wave-type shells) ---------------------------------------

def rosen_form(h: JumpFunction, point):
    """Complex one-form of the wave-type metric and the real metric it spans.

    Valid for dim_n = 3 and H = a v + F(z) only.  Returns the coefficients
    (omega_Z, omega_Zbar) of the one-form on the complex transverse chart
    Z = (z2 + i z3)/sqrt(2), and the real matrix -2 du dv + 2 omega (x)_s
    conj(omega) over (u, v, z2, z3).
    """
    if h.dim_n != 3:
        raise WrongDimension("the Rosen form needs a 4-dimensional spacetime (dim_n = 3)")
    point = np.asarray(point, dtype=float)
    u = point[0]
    z = point[1:]

    if h.family in ("wave", "linear"):
        a = h.params["a"]
    else:
        a = None
    # wave-type probe: dH_v constant, no mixed v-derivatives, v-independent Hessian
    probe = []
    for v_probe in (0.0, 0.7):
        j = h.jets(v_probe, z, order=3)
        if abs(j.partial((2, 0, 0))) > 1e-12 or abs(j.partial((1, 1, 0))) > 1e-12 \
                or abs(j.partial((1, 0, 1))) > 1e-12:
            raise NotWaveType("jump function has v-dependent derivatives")
        probe.append(j)
    if a is None:
        a = probe[0].partial((1, 0, 0))
    hess = np.array([[probe[0].partial((0, 2, 0)), probe[0].partial((0, 1, 1))],
                     [probe[0].partial((0, 1, 1)), probe[0].partial((0, 0, 2))]])

    u_plus = max(u, 0.0)
    dz_dz_bar = 0.5 * (hess[0, 0] + hess[1, 1])                    # d_Zbar d_Z F
    dzbar2 = 0.5 * (hess[0, 0] - hess[1, 1]) + 1j * hess[0, 1]     # d_Zbar d_Zbar F
    omega_z = 1.0 + (u_plus / a) * dz_dz_bar
    omega_zbar = (u_plus / a) * dzbar2

    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    w2 = (omega_z + omega_zbar) * inv_sqrt2
    w3 = (omega_z - omega_zbar) * 1j * inv_sqrt2
    comps = np.array([w2, w3])
    spatial = np.empty((2, 2))
    for i in range(2):
        for j2 in range(2):
            spatial[i, j2] = 2.0 * (comps[i] * np.conj(comps[j2])).real

    g = np.zeros((4, 4))
    g[0, 1] = g[1, 0] = -1.0
    g[2:, 2:] = spatial
    return (omega_z, omega_zbar), g


# -- epsilon-regularized distributional form --------------------------------------------

def discontinuous_coordinates(h: JumpFunction, point, mollifier=None,
                              eps: Optional[float] = None, order: int = 1):
    """The shifted coordinates (U, V, X^A) on the null chart, as jets.

    Without a mollifier the exact (discontinuous) definition is used with
    theta/u_+ evaluated pointwise (valid only off u = 0); with a mollifier
    and eps the smooth regularization theta -> theta_eps, u_+ -> u theta_eps
    is substituted.
    """
    point = np.asarray(point, dtype=float)
    n = h.dim_n
    dim = n + 1
    sp = jet_space(dim, order)
    coords = sp.point(point)
    u, v = coords[0], coords[1]
    sp2, h_lift, dv = _lifted_h(h, point, order)
    u1 = dv.reciprocal()
    hj = h.jets(point[1], point[2:], order=min(order + 1, 4))
    grads = [hj.derivative(1 + a).truncated(order).embed(sp, range(1, dim))
             for a in range(n - 1)]
    m = grads[0] * grads[0]
    for gq in grads[1:]:
        m = m + gq * gq
    m = m * 0.5
    v1 = m * u1
    x1 = [gq * u1 for gq in grads]

    if mollifier is None:
        theta = sp.constant(1.0 if point[0] >= 0.0 else 0.0)
        u_plus = u * theta
    else:
        theta = mollifier.theta_eps(u, eps)
        u_plus = u * theta

    big_u = u + u_plus * (u1 - 1.0)
    big_v = v + theta * (h_lift - v) + u_plus * v1
    big_x = [coords[2 + a] + u_plus * x1[a] for a in range(n - 1)]
    return (big_u, big_v, *big_x)


def regularized_distributional_metric(h: JumpFunction, lam: float, mollifier,
                                      eps: float, point) -> np.ndarray:
    """Value matrix of the mollified distributional metric at a point.

    Substitutes theta_eps / u theta_eps(u) / rho_eps into the shifted
    coordinates and into the impulsive term, takes all differentials by jet
    arithmetic, and (for lam != 0) divides by the regularized conformal
    factor built from the shifted coordinates.
    """
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    point = np.asarray(point, dtype=float)
    n = h.dim_n
    dim = n + 1
    coords = discontinuous_coordinates(h, point, mollifier=mollifier, eps=eps, order=1)
    grads = np.array([[c.partial(tuple(1 if k == mu else 0 for k in range(dim)))
                       for mu in range(dim)] for c in coords])
    vals = np.array([c.value for c in coords])
    rho_val = mollifier.rho_eps(point[0], eps)
    hs = hscript(h, point[1], point[2:])

    du, dv = grads[0], grads[1]
    g = -(np.outer(du, dv) + np.outer(dv, du))
    for a in range(n - 1):
        g = g + np.outer(grads[2 + a], grads[2 + a])
    g = g + 2.0 * hs * rho_val * np.outer(du, du)

    if lam != 0.0:
        q = 1.0 + lam / 12.0 * (float(np.dot(vals[2:], vals[2:])) - 2.0 * vals[0] * vals[1])
        if abs(q) < 1e-12:
            raise ConformalFactorZero(f"regularized conformal factor Q = {q}")
        g = g / q ** 2
    return g
