"""Shell content of a matching: jump tensor, energy-momentum, classification.

Index convention for the jump tensor [Y_ab]: slot 0 is the null parameter v,
slots 1..n-1 are the transverse coordinates z2..zn, so [Y] is an n x n
symmetric matrix on an n-dimensional matching hypersurface.

The sign convention follows the setup in which the minus-side rigging points
inwards, i.e. epsilon = -1 throughout; it is exposed read-only on reports.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (ConformalFactorZero, DomainError,
                     NonPositiveDerivative, SingularLeafMetric)
from .jets import jet_space
from .jump_functions import JumpFunction, check_example_constraints

EPSILON_SIGN = -1  # minus-side rigging points inwards


class ShellClass(enum.Enum):
    NO_SHELL = "NoShell"
    PURE_GRAVITY = "PureGravity"
    NULL_DUST = "NullDust"
    GENERIC = "Generic"


@dataclass(frozen=True)
class ShellContent:
    y_jump: np.ndarray            # [Y_ab], n x n, slot 0 = v
    rho: float
    flux: np.ndarray              # j^A
    pressure: float
    shell_class: ShellClass
    epsilon: int = EPSILON_SIGN


@dataclass(frozen=True)
class LeafGeometry:
    """Geometry of the leaves {v = const} and the boundary frame tensors.

    ``h(z_jets)`` returns the leaf metric as a matrix of jets in the
    transverse coordinates.  ``sigma_minus/plus(v, z)`` are the one-form
    components on the frame basis, ``theta_minus/plus(v, z)`` the symmetric
    tensors; the plus-side callables receive the abstract point (v, z) and
    are responsible for their own pullback through the matching map.
    """

    dim_n: int
    h: Callable
    sigma_minus: Callable
    sigma_plus: Callable
    theta_minus: Callable
    theta_plus: Callable
    epsilon: int = EPSILON_SIGN


def flat_leaf_geometry(dim_n: int) -> LeafGeometry:
    nt = dim_n - 1
    zero_vec = lambda v, z: np.zeros(nt)
    zero_mat = lambda v, z: np.zeros((nt, nt))

    def h(z_jets):
        sp = z_jets[0].space
        m = np.empty((nt, nt), dtype=object)
        for i in range(nt):
            for j in range(nt):
                m[i, j] = sp.constant(1.0 if i == j else 0.0)
        return m

    return LeafGeometry(dim_n, h, zero_vec, zero_vec, zero_mat, zero_mat)


def ads_leaf_geometry(h_jump: JumpFunction, lam: float) -> LeafGeometry:
    """Leaf geometry of the constant-curvature matching with h^A = z^A.

    Leaf metric delta/Omega_N^2 with Omega_N = 1 + (lam/12)|z|^2; the frame
    one-forms are (lam/6) z_I / Omega_N on both sides, and the transverse
    tensors are -(lam/6) V / Omega_N * delta_IJ with V = v on the minus side
    and V = H(v, z) on the plus side.
    """
    nt = h_jump.dim_n - 1

    def omega_n(z):
        return 1.0 + lam / 12.0 * float(np.dot(z, z))

    def h(z_jets):
        sp = z_jets[0].space
        acc = z_jets[0] * z_jets[0]
        for zj in z_jets[1:]:
            acc = acc + zj * zj
        om = 1.0 + (lam / 12.0) * acc
        inv2 = om.reciprocal()
        inv2 = inv2 * inv2
        m = np.empty((nt, nt), dtype=object)
        for i in range(nt):
            for j in range(nt):
                m[i, j] = inv2 if i == j else sp.constant(0.0)
        return m

    def sigma(v, z):
        z = np.asarray(z, dtype=float)
        return (lam / 6.0) * z / omega_n(z)

    def theta_minus(v, z):
        z = np.asarray(z, dtype=float)
        return -(lam / 6.0) * v / omega_n(z) * np.eye(nt)

    def theta_plus(v, z):
        z = np.asarray(z, dtype=float)
        hv = h_jump.jets(v, z, order=0).value
        return -(lam / 6.0) * hv / omega_n(z) * np.eye(nt)

    return LeafGeometry(h_jump.dim_n, h, sigma, sigma, theta_minus, theta_plus)


# -- jump tensor -------------------------------------------------------------------

def _h_partials(h: JumpFunction, v: float, z, order: int = 2):
    j = h.jets(v, z, order=order)
    n = h.dim_n
    dv = j.partial((1,) + (0,) * (n - 1))
    if dv <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv} <= 0 at v={v}, z={z}")
    return j, dv


def jump_tensor_minkowski(h: JumpFunction, v: float, z) -> np.ndarray:
    """[Y_ab] = -d_a d_b H / d_v H for the flat matching (slot 0 = v)."""
    n = h.dim_n
    j, dv = _h_partials(h, v, z)
    y = np.zeros((n, n))
    for a in range(n):
        for b in range(a, n):
            mi = [0] * n
            mi[a] += 1
            mi[b] += 1
            y[a, b] = y[b, a] = -j.partial(tuple(mi)) / dv
    return y


def jump_tensor_general(h: JumpFunction, geom: LeafGeometry, v: float, z) -> np.ndarray:
    """Jump tensor for totally geodesic boundaries with general leaf data.

    Uses the trivial generator identification (dh^B/dz^I = delta), under
    which the plus-side frame vectors W_J coincide with the leaf basis.
    """
    n = h.dim_n
    nt = n - 1
    z = np.atleast_1d(np.asarray(z, dtype=float))
    j, dv = _h_partials(h, v, z)

    zsp = jet_space(nt, 1)
    z_jets = [zsp.variable(k, z[k]) for k in range(nt)]
    h_mat = geom.h(z_jets)
    h_vals = np.array([[h_mat[i, jx].value for jx in range(nt)] for i in range(nt)])
    cond = np.linalg.cond(h_vals)
    if not np.isfinite(cond) or cond > 1e12:
        raise SingularLeafMetric(f"leaf metric condition {cond:.3e}")
    h_inv = np.linalg.inv(h_vals)
    dh = np.array([[[h_mat[i, jx].derivative(k).value for jx in range(nt)]
                    for i in range(nt)] for k in range(nt)])
    gamma = np.zeros((nt, nt, nt))
    for kk in range(nt):
        for ii in range(nt):
            for jj in range(nt):
                gamma[kk, ii, jj] = 0.5 * sum(
                    h_inv[kk, ll] * (dh[ii, ll, jj] + dh[jj, ll, ii] - dh[ll, ii, jj])
                    for ll in range(nt))

    sig_p = np.asarray(geom.sigma_plus(v, z), dtype=float)
    sig_m = np.asarray(geom.sigma_minus(v, z), dtype=float)
    th_p = np.asarray(geom.theta_plus(v, z), dtype=float)
    th_m = np.asarray(geom.theta_minus(v, z), dtype=float)
    th_p = 0.5 * (th_p + th_p.T)
    th_m = 0.5 * (th_m + th_m.T)

    def pd(*orders):
        mi = [0] * n
        for a in orders:
            mi[a] += 1
        return j.partial(tuple(mi))

    y = np.zeros((n, n))
    y[0, 0] = -pd(0, 0) / dv
    for jj in range(nt):
        y[0, 1 + jj] = y[1 + jj, 0] = sig_p[jj] - sig_m[jj] - pd(0, 1 + jj) / dv
    grad = np.array([pd(1 + ii) for ii in range(nt)])
    for ii in range(nt):
        for jj in range(ii, nt):
            hess = pd(1 + ii, 1 + jj) - float(np.dot(gamma[:, ii, jj], grad))
            val = (grad[ii] * sig_p[jj] + grad[jj] * sig_p[ii]
                   + th_p[ii, jj] - dv * th_m[ii, jj] - hess) / dv
            y[1 + ii, 1 + jj] = y[1 + jj, 1 + ii] = val
    return y


def jump_tensor_ads(h: JumpFunction, lam: float, v: float, z) -> np.ndarray:
    """Jump tensor of the constant-curvature matching from the flat one.

    Only the transverse block differs:
    [Y^hat_AB] = [Y_AB] + lam delta_AB / (6 Omega_N dH/dv)
                 * (v dH/dv - H + z^C d_C H).
    """
    n = h.dim_n
    z = np.atleast_1d(np.asarray(z, dtype=float))
    omega_n = 1.0 + lam / 12.0 * float(np.dot(z, z))
    if abs(omega_n) < 1e-14:
        raise ConformalFactorZero(f"Omega = {omega_n} at z = {z}")
    j, dv = _h_partials(h, v, z)
    y = jump_tensor_minkowski(h, v, z)
    hv = j.value
    zdz = sum(z[k] * j.partial(tuple(1 if i == k + 1 else 0 for i in range(n)))
              for k in range(n - 1))
    corr = lam / (6.0 * omega_n * dv) * (v * dv - hv + zdz)
    y_hat = y.copy()
    for a in range(1, n):
        y_hat[a, a] += corr
    return y_hat


# -- energy momentum and scalars ------------------------------------------------------

def energy_momentum(y_jump: np.ndarray, geom: LeafGeometry, v: float = 0.0,
                    z=None) -> dict:
    """Contravariant shell energy-momentum from the jump tensor.

    tau^vv = -eps h^IJ [Y_IJ];  tau^vI = eps h^IJ [Y_vJ];
    tau^IJ = -eps h^IJ [Y_vv].
    """
    n = y_jump.shape[0]
    nt = n - 1
    if z is None:
        z = np.zeros(nt)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    zsp = jet_space(nt, 0)
    h_mat = geom.h([zsp.variable(k, z[k]) for k in range(nt)])
    h_vals = np.array([[h_mat[i, j].value for j in range(nt)] for i in range(nt)])
    cond = np.linalg.cond(h_vals)
    if not np.isfinite(cond) or cond > 1e12:
        raise SingularLeafMetric(f"leaf metric condition {cond:.3e}")
    h_inv = np.linalg.inv(h_vals)
    eps = geom.epsilon
    tau_vv = -eps * float(np.einsum("ij,ij->", h_inv, y_jump[1:, 1:]))
    tau_vi = eps * h_inv @ y_jump[0, 1:]
    tau_ij = -eps * h_inv * y_jump[0, 0]
    return {"vv": tau_vv, "vI": tau_vi, "IJ": tau_ij, "epsilon": eps}


def shell_scalars(h: JumpFunction, v: float, z):
    """(rho, flux, pressure) of the flat matching at a point."""
    n = h.dim_n
    j, dv = _h_partials(h, v, z)

    def pd(*orders):
        mi = [0] * n
        for a in orders:
            mi[a] += 1
        return j.partial(tuple(mi))

    rho = -sum(pd(1 + a, 1 + a) for a in range(n - 1)) / dv
    flux = np.array([pd(0, 1 + a) for a in range(n - 1)]) / dv
    pressure = -pd(0, 0) / dv
    return rho, flux, pressure


def classify_shell(h: JumpFunction, grid, tol: float = 1e-10) -> ShellClass:
    """Pointwise maxima of |Y|, |rho|, |j|, |p| over the grid decide the class."""
    y_max = rho_max = j_max = p_max = 0.0
    for v, z in grid:
        y = jump_tensor_minkowski(h, v, z)
        rho, flux, p = shell_scalars(h, v, z)
        y_max = max(y_max, float(np.max(np.abs(y))))
        rho_max = max(rho_max, abs(rho))
        j_max = max(j_max, float(np.max(np.abs(flux))) if flux.size else 0.0)
        p_max = max(p_max, abs(p))
    if y_max <= tol:
        return ShellClass.NO_SHELL
    if rho_max <= tol and j_max <= tol and p_max <= tol:
        return ShellClass.PURE_GRAVITY
    if rho_max > tol and j_max <= tol and p_max <= tol:
        return ShellClass.NULL_DUST
    return ShellClass.GENERIC


def shell_content(h: JumpFunction, v: float, z, grid=None) -> ShellContent:
    """Full shell data at a point; classification over ``grid`` or the point."""
    y = jump_tensor_minkowski(h, v, z)
    rho, flux, p = shell_scalars(h, v, z)
    cls = classify_shell(h, grid if grid is not None else [(v, z)])
    return ShellContent(y_jump=y, rho=rho, flux=flux, pressure=p, shell_class=cls)


# -- closed forms of the four-parameter family -----------------------------------------

def example_closed_forms(a: float, b: float, c: float, h0: float,
                         v: float, r: float):
    """(dvH, p, rho, j_r) of the four-parameter family at (v, r), r > 0."""
    check_example_constraints(a, b, c, h0)
    if r <= 0.0:
        raise DomainError("closed forms require r > 0 (energy density diverges at r = 0)")
    ev2 = math.exp(-v * v)
    tr = math.tanh(r)
    ch_r2 = math.cosh(r) ** 2
    dv_h = a - b * math.tanh(v) + 2.0 * c * v * tr * ev2
    p = (b / math.cosh(v) ** 2 + 2.0 * c * tr * ev2 * (2.0 * v * v - 1.0)) / dv_h
    rho = (c * ev2 / ch_r2 * (1.0 / r - 2.0 * tr)
           + h0 * (math.erf(r) + r * math.exp(-r * r) / math.sqrt(math.pi)
                   * (2.5 - r * r))) / dv_h
    j_r = 2.0 * c * v * ev2 / (dv_h * ch_r2)
    return dv_h, p, rho, j_r
