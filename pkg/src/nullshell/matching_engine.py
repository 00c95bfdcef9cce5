"""Coordinate maps between the null chart and the flat/conformal charts,
matching riggings, junction-condition checks, and geodesic-extension checks.

Chart conventions: null chart points are (u, v, z2..zn); flat chart points
are (U, V, x2..xn).  The minus side is the identity relabelling; the plus
side is linear in u with transverse coefficients built from first
derivatives of the jump function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import tensor_core
from .errors import ConformalFactorZero, NonPositiveDerivative, NotTransversal
from .jets import JetScalar, jet_space
from .jump_functions import JumpFunction
from .tensor_core import MetricField, christoffel_at, conformal_metric_field


@dataclass(frozen=True)
class TransverseCoefficients:
    """First-order-in-u coefficients of the plus-side chart map.

    U1 = 1/dH_v, q^A = d_A H, M = |q|^2 / 2, V1 = M U1, x1^A = q^A U1,
    each stored as a jet in (v, z).
    """

    u1: JetScalar
    v1: JetScalar
    x1: list
    m: JetScalar
    q: list

    def values(self):
        return (self.u1.value, self.v1.value,
                np.array([x.value for x in self.x1]),
                self.m.value,
                np.array([q.value for q in self.q]))


def transverse_coefficients(h: JumpFunction, v: float, z,
                            order: int = 2) -> TransverseCoefficients:
    n = h.dim_n
    j = h.jets(v, z, order=order + 1)
    dv = j.derivative(0)
    if dv.value <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv.value} <= 0 at v={v}, z={z}")
    u1 = dv.reciprocal().truncated(order)
    q = [j.derivative(1 + a).truncated(order) for a in range(n - 1)]
    m = q[0] * q[0]
    for qa in q[1:]:
        m = m + qa * qa
    m = m * 0.5
    v1 = m * u1
    x1 = [qa * u1 for qa in q]
    return TransverseCoefficients(u1=u1, v1=v1, x1=x1, m=m, q=q)


def chart_map(h: JumpFunction, side: str, point, order: int = 2):
    """Map (u, v, z) to the flat chart of the requested side, with jets.

    minus: (u, v, z) -> (u, v, z); plus: (u U1, H + u V1, z^A + u x1^A).
    The plus map covers u >= 0, the minus map u <= 0.
    """
    point = np.asarray(point, dtype=float)
    dim = h.dim_n + 1
    sp = jet_space(dim, order)
    coords = sp.point(point)
    if side == "minus":
        return tuple(coords)
    if side != "plus":
        raise ValueError(f"side must be 'minus' or 'plus', got {side!r}")
    u = coords[0]
    hj = h.jets(point[1], point[2:], order=order + 1)
    lift = lambda jet: jet.embed(sp, range(1, dim))
    h_lift = lift(hj.truncated(order))
    dv = lift(hj.derivative(0).truncated(order))
    if dv.value <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv.value} <= 0 at {point!r}")
    u1 = dv.reciprocal()
    q = [lift(hj.derivative(1 + a).truncated(order)) for a in range(h.dim_n - 1)]
    m = q[0] * q[0]
    for qa in q[1:]:
        m = m + qa * qa
    m = m * 0.5
    big_u = u * u1
    big_v = h_lift + u * (m * u1)
    xs = tuple(coords[2 + a] + u * (q[a] * u1) for a in range(h.dim_n - 1))
    return (big_u, big_v) + xs


def rigging_plus(h: JumpFunction, lam: float, v: float, z) -> np.ndarray:
    """Components of the unique plus-side matching rigging in the flat chart.

    xi+ = -P / dH_v * (d_U + d_A H (1/2 d_A H d_V + d_{x^A})), with
    P = Omega_N^2 for lam != 0 and P = 1 for the flat case.
    """
    n = h.dim_n
    z = np.atleast_1d(np.asarray(z, dtype=float))
    j = h.jets(v, z, order=1)
    dv = j.partial((1,) + (0,) * (n - 1))
    if dv <= 0.0:
        raise NonPositiveDerivative(f"dH/dv = {dv} <= 0 at v={v}, z={z}")
    grad = np.array([j.partial(tuple(1 if i == 1 + a else 0 for i in range(n)))
                     for a in range(n - 1)])
    if lam != 0.0:
        omega_n = 1.0 + lam / 12.0 * float(np.dot(z, z))
        if abs(omega_n) < 1e-14:
            raise ConformalFactorZero(f"Omega = {omega_n} at z = {z}")
        prefac = omega_n ** 2
    else:
        prefac = 1.0
    xi = np.zeros(n + 1)
    xi[0] = 1.0
    xi[1] = 0.5 * float(np.dot(grad, grad))
    xi[2:] = grad
    return -(prefac / dv) * xi


def rigging_minus(lam: float, v: float, z, dim_n: int) -> np.ndarray:
    """Minus-side rigging -Omega^2 d_U (or -d_U for lam = 0) in the flat chart."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    xi = np.zeros(dim_n + 1)
    omega = 1.0 + lam / 12.0 * float(np.dot(z, z)) if lam != 0.0 else 1.0
    xi[0] = -omega ** 2
    return xi


@dataclass(frozen=True)
class BoundaryFrame:
    """Adapted frame along a boundary point: generator k, past rigging L and
    the leaf basis v_I, with g(L, k) = 1 and g(L, v_I) = 0.

    Components are in the flat chart of the given side; ``future_k`` and
    ``past_l`` record the orientation tags of the construction.
    """

    side: str
    point: np.ndarray
    k: np.ndarray
    l: np.ndarray
    v_i: np.ndarray  # rows are the leaf vectors
    future_k: bool = True
    past_l: bool = True

    def pairing_residuals(self, lam: float):
        """(|g(L,k) - 1|, max |g(L,v_I)|) at the frame's point."""
        g = _conformal_values(lam, self.point)
        r1 = abs(float(self.l @ g @ self.k) - 1.0)
        r2 = float(np.max(np.abs(self.v_i @ g @ self.l))) if len(self.v_i) else 0.0
        return r1, r2


def boundary_frame(lam: float, side: str, v: float, z, dim_n: int) -> BoundaryFrame:
    """The frame choice used throughout: L = -Omega^2 d_U, k = d_V, v_I = d_x^I."""
    z = np.atleast_1d(np.asarray(z, dtype=float))
    dim = dim_n + 1
    point = np.concatenate(([0.0, v], z))
    k = np.zeros(dim)
    k[1] = 1.0
    l = rigging_minus(lam, v, z, dim_n)
    v_i = np.zeros((dim_n - 1, dim))
    for a in range(dim_n - 1):
        v_i[a, 2 + a] = 1.0
    return BoundaryFrame(side=side, point=point, k=k, l=l, v_i=v_i)


# -- pullbacks ---------------------------------------------------------------------

def pullback_plus_metric(h: JumpFunction, lam: float, point) -> np.ndarray:
    """Pullback of the flat/conformal plus metric through the chart map.

    Independent of the assembled closed-form metric: uses only the chart-map
    Jacobian (from jets) and the flat-chart metric at the image point.
    """
    dim = h.dim_n + 1
    img = chart_map(h, "plus", point, order=1)
    x_img = np.array([c.value for c in img])
    jac = np.array([[img[i].partial(tuple(1 if k == mu else 0 for k in range(dim)))
                     for mu in range(dim)] for i in range(dim)])
    eta = np.zeros((dim, dim))
    eta[0, 1] = eta[1, 0] = -1.0
    for a in range(2, dim):
        eta[a, a] = 1.0
    g = jac.T @ eta @ jac
    if lam != 0.0:
        omega = 1.0 + lam / 12.0 * (float(np.dot(x_img[2:], x_img[2:]))
                                    - 2.0 * x_img[0] * x_img[1])
        if abs(omega) < 1e-14:
            raise ConformalFactorZero(f"Omega = {omega} at image {x_img!r}")
        g = g / omega ** 2
    return g


# -- junction conditions --------------------------------------------------------------

@dataclass(frozen=True)
class JunctionReport:
    n_samples: int
    max_first_form: float
    max_rigging_pairing: float
    max_rigging_norm: float
    orientation_ok: bool

    @property
    def max_residual(self) -> float:
        return max(self.max_first_form, self.max_rigging_pairing, self.max_rigging_norm)

    def passed(self, tol: float) -> bool:
        return self.orientation_ok and self.max_residual <= tol


def _flat_metric_values(dim):
    eta = np.zeros((dim, dim))
    eta[0, 1] = eta[1, 0] = -1.0
    for a in range(2, dim):
        eta[a, a] = 1.0
    return eta


def _conformal_values(lam, x):
    dim = len(x)
    eta = _flat_metric_values(dim)
    if lam == 0.0:
        return eta
    omega = 1.0 + lam / 12.0 * (float(np.dot(x[2:], x[2:])) - 2.0 * x[0] * x[1])
    if abs(omega) < 1e-14:
        raise ConformalFactorZero(f"Omega = {omega} at {x!r}")
    return eta / omega ** 2


def verify_junction(h: JumpFunction, lam: float, samples) -> JunctionReport:
    """Residuals of the three junction conditions at samples on the shell.

    At each (v, z): the pullback first fundamental forms on the identified
    bases must agree, as must the rigging pairings with the basis and the
    rigging norms; orientation is a sign test on the U-components.
    """
    n = h.dim_n
    dim = n + 1
    r1 = r2 = r3 = 0.0
    orient = True
    count = 0
    for v, z in samples:
        z = np.atleast_1d(np.asarray(z, dtype=float))
        j = h.jets(v, z, order=1)
        dv = j.partial((1,) + (0,) * (n - 1))
        if dv <= 0.0:
            raise NonPositiveDerivative(f"dH/dv = {dv} <= 0 at v={v}, z={z}")
        grad = np.array([j.partial(tuple(1 if i == 1 + a else 0 for i in range(n)))
                         for a in range(n - 1)])
        x_minus = np.concatenate(([0.0, v], z))
        x_plus = np.concatenate(([0.0, j.value], z))
        g_m = _conformal_values(lam, x_minus)
        g_p = _conformal_values(lam, x_plus)

        # identified tangent bases e_a in the flat-chart components
        e_m = np.zeros((n, dim))
        e_m[0, 1] = 1.0
        for a in range(n - 1):
            e_m[1 + a, 2 + a] = 1.0
        e_p = np.zeros((n, dim))
        e_p[0, 1] = dv
        for a in range(n - 1):
            e_p[1 + a, 1] = grad[a]
            e_p[1 + a, 2 + a] = 1.0

        xi_m = rigging_minus(lam, v, z, n)
        xi_p = rigging_plus(h, lam, v, z)

        first_m = e_m @ g_m @ e_m.T
        first_p = e_p @ g_p @ e_p.T
        r1 = max(r1, float(np.max(np.abs(first_m - first_p))))
        pair_m = e_m @ g_m @ xi_m
        pair_p = e_p @ g_p @ xi_p
        r2 = max(r2, float(np.max(np.abs(pair_m - pair_p))))
        r3 = max(r3, abs(float(xi_m @ g_m @ xi_m) - float(xi_p @ g_p @ xi_p)))
        # xi- must point into {U <= 0}, xi+ out of {U >= 0}: both U-components negative
        orient = orient and (xi_m[0] < 0.0) and (xi_p[0] < 0.0)
        count += 1
    return JunctionReport(n_samples=count, max_first_form=r1,
                          max_rigging_pairing=r2, max_rigging_norm=r3,
                          orientation_ok=orient)


# -- xi-aligning isometry check ----------------------------------------------------------

@dataclass(frozen=True)
class XiAligningReport:
    n_samples: int
    max_tangent: float      # condition (i)
    max_pairing: float      # condition (ii)
    max_norm: float         # condition (iii)

    def passed(self, tol: float = 1e-10) -> bool:
        return max(self.max_tangent, self.max_pairing, self.max_norm) <= tol


def _as_matrix_eval(g):
    if isinstance(g, MetricField):
        return lambda point: g.values(point)
    return g


def verify_xi_aligning(g1, g2, embed1: Callable, embed2: Callable,
                       xi1: Callable, xi2: Callable, samples) -> XiAligningReport:
    """Residuals of the three aligning-isometry conditions along a boundary.

    ``embed1/embed2`` map boundary parameters s to chart points of either
    side and must be evaluable on jets (the tangent bases are their
    s-derivatives); ``xi1/xi2`` give the transversal vector components at s.
    The boundary map itself is embed2 composed with the parameterisation.
    """
    g1v = _as_matrix_eval(g1)
    g2v = _as_matrix_eval(g2)
    r1 = r2 = r3 = 0.0
    count = 0
    for s in samples:
        s = np.atleast_1d(np.asarray(s, dtype=float))
        k = len(s)
        sp = jet_space(k, 1)
        sjets = sp.point(s)
        p1 = embed1(sjets)
        p2 = embed2(sjets)
        x1 = np.array([c.value if isinstance(c, JetScalar) else float(c) for c in p1])
        x2 = np.array([c.value if isinstance(c, JetScalar) else float(c) for c in p2])

        def basis(points, x):
            rows = []
            for a in range(k):
                e_a = tuple(1 if i == a else 0 for i in range(k))
                rows.append([c.partial(e_a) if isinstance(c, JetScalar) else 0.0
                             for c in points])
            return np.asarray(rows)

        b1 = basis(p1, x1)
        b2 = basis(p2, x2)
        v1 = np.asarray(xi1(s), dtype=float)
        v2 = np.asarray(xi2(s), dtype=float)
        frame = np.vstack([b1, v1])
        if abs(np.linalg.det(frame)) < 1e-12 * max(1.0, np.max(np.abs(frame)) ** len(frame)):
            raise NotTransversal(f"xi lies in the boundary tangent space at s = {s!r}")
        m1 = g1v(x1)
        m2 = g2v(x2)
        r1 = max(r1, float(np.max(np.abs(b1 @ m1 @ b1.T - b2 @ m2 @ b2.T))))
        r2 = max(r2, float(np.max(np.abs(b1 @ m1 @ v1 - b2 @ m2 @ v2))))
        r3 = max(r3, abs(float(v1 @ m1 @ v1) - float(v2 @ m2 @ v2)))
        count += 1
    return XiAligningReport(n_samples=count, max_tangent=r1, max_pairing=r2, max_norm=r3)


def shell_xi_aligning_report(h: JumpFunction, lam: float, samples) -> XiAligningReport:
    """The matched-shell data routed through the general aligning check.

    Boundary parameters are (v, z); side 1 is the minus chart, side 2 the
    plus chart with the matching map (v, z) -> (0, H(v, z), z).
    """
    n = h.dim_n
    dim = n + 1
    g1 = lambda x: _conformal_values(lam, x)
    g2 = lambda x: _conformal_values(lam, x)

    def embed1(sjets):
        zero = sjets[0].space.constant(0.0)
        return (zero, sjets[0]) + tuple(sjets[1:])

    def embed2(sjets):
        zero = sjets[0].space.constant(0.0)
        hval = h.eval_with(sjets[0], list(sjets[1:]))
        return (zero, hval) + tuple(sjets[1:])

    xi1 = lambda s: rigging_minus(lam, s[0], s[1:], n)
    xi2 = lambda s: rigging_plus(h, lam, s[0], s[1:])
    return verify_xi_aligning(g1, g2, embed1, embed2, xi1, xi2, samples)


# -- geodesic extension of the plus rigging ------------------------------------------------

@dataclass(frozen=True)
class GeodesicExtensionReport:
    n_samples: int
    max_null_norm: float          # (a) g(xi, xi)
    max_geodesic_residual: float  # (b) nabla_xi xi + F xi
    max_second_u_derivative: float  # (c) affinity of the chart map in u

    def passed(self, tol: float = 1e-9) -> bool:
        return max(self.max_null_norm, self.max_geodesic_residual,
                   self.max_second_u_derivative) <= tol


def verify_geodesic_extension(lam: float, h: JumpFunction, samples) -> GeodesicExtensionReport:
    """Checks that d_u extends as a null geodesic (up to the conformal factor).

    With xi = d_u expressed in the plus flat chart, verifies g(xi, xi) = 0,
    nabla_xi xi + F xi = 0 for F = 2 dOmega(xi)/Omega, and that the chart
    map is affine in u.
    """
    dim = h.dim_n + 1
    gfield = conformal_metric_field(lam, dim) if lam != 0.0 else tensor_core.flat_metric_field(dim)
    ra = rb = rc = 0.0
    count = 0
    for point in samples:
        point = np.asarray(point, dtype=float)
        img = chart_map(h, "plus", point, order=2)
        x_img = np.array([c.value for c in img])
        # xi components are the u-gradients of the chart map
        e_u = tuple(1 if k == 0 else 0 for k in range(dim))
        xi = np.array([c.partial(e_u) for c in img])
        e_uu = tuple(2 if k == 0 else 0 for k in range(dim))
        rc = max(rc, max(abs(c.partial(e_uu)) for c in img))

        g_vals = gfield.values(x_img)
        ra = max(ra, abs(float(xi @ g_vals @ xi)))

        gamma = christoffel_at(gfield, x_img, order=1)
        nabla = np.array([sum(gamma[nu, al, be].value * xi[al] * xi[be]
                              for al in range(dim) for be in range(dim))
                          for nu in range(dim)])
        if lam != 0.0:
            omega = 1.0 + lam / 12.0 * (float(np.dot(x_img[2:], x_img[2:]))
                                        - 2.0 * x_img[0] * x_img[1])
            if abs(omega) < 1e-14:
                raise ConformalFactorZero(f"Omega = {omega} at {x_img!r}")
            d_omega = np.concatenate((
                [-lam / 6.0 * x_img[1], -lam / 6.0 * x_img[0]],
                lam / 6.0 * x_img[2:]))
            f_val = 2.0 * float(np.dot(d_omega, xi)) / omega
        else:
            f_val = 0.0
        rb = max(rb, float(np.max(np.abs(nabla + f_val * xi))))
        count += 1
    return GeodesicExtensionReport(n_samples=count, max_null_norm=ra,
                                   max_geodesic_residual=rb,
                                   max_second_u_derivative=rc)
