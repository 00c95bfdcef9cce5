"""Chart-based tensor algebra over jet scalars.

Metric components are evaluated as jets, so Christoffel symbols and the
Riemann tensor come out of exact derivative bookkeeping; the only floating
point error is round-off.  Index raising/lowering is always explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InsufficientOrder, SingularMetric
from .jets import JetScalar, jet_space

CHARTS = ("null_coords", "flat_minus", "flat_plus", "generic")

CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class MetricField:
    """A chart label plus a point -> matrix-of-jets evaluator.

    ``component_fn(point, order)`` must return a symmetric (dim x dim)
    object array of JetScalar over a jet space with ``dim`` variables.
    """

    chart: str
    dim: int
    component_fn: Callable
    max_order: int = 4
    label: str = ""

    def eval(self, point, order: int = 2) -> np.ndarray:
        if order > self.max_order:
            raise InsufficientOrder(
                f"metric {self.label or self.chart} supports jets up to order "
                f"{self.max_order}, requested {order}")
        return self.component_fn(np.asarray(point, dtype=float), order)

    def values(self, point) -> np.ndarray:
        m = self.eval(point, order=0)
        return np.array([[m[i, j].value for j in range(self.dim)] for i in range(self.dim)])


def metric_from_function(fn, dim: int, chart: str = "generic", label: str = "") -> MetricField:
    """Wrap ``fn(coord_jets) -> matrix`` (entries jets or numbers) as a MetricField."""

    def component_fn(point, order):
        sp = jet_space(dim, order)
        coords = sp.point(point)
        raw = fn(coords)
        out = np.empty((dim, dim), dtype=object)
        for i in range(dim):
            for j in range(dim):
                x = raw[i][j] if not isinstance(raw, np.ndarray) else raw[i, j]
                out[i, j] = x if isinstance(x, JetScalar) else sp.constant(float(x))
        return out

    return MetricField(chart=chart, dim=dim, component_fn=component_fn, label=label)


def flat_metric_field(dim: int, chart: str = "flat_plus") -> MetricField:
    """-2 dU dV + delta_AB dx^A dx^B on a (U, V, x^A) chart."""

    def fn(coords):
        sp = coords[0].space
        zero = sp.constant(0.0)
        g = [[zero for _ in range(dim)] for _ in range(dim)]
        g[0][1] = g[1][0] = sp.constant(-1.0)
        for a in range(2, dim):
            g[a][a] = sp.constant(1.0)
        return g

    return metric_from_function(fn, dim, chart=chart, label="flat")


def conformal_factor(lam: float, coords):
    """Omega = 1 + (lam/12)(|x|^2 - 2 U V) on a flat chart, as a jet."""
    u, v = coords[0], coords[1]
    acc = u * v * (-2.0)
    for x in coords[2:]:
        acc = acc + x * x
    return 1.0 + (lam / 12.0) * acc


def conformal_metric_field(lam: float, dim: int, chart: str = "flat_plus") -> MetricField:
    """Constant-curvature metric eta / Omega^2 on a flat chart."""
    if lam == 0.0:
        return flat_metric_field(dim, chart)

    def fn(coords):
        sp = coords[0].space
        omega = conformal_factor(lam, coords)
        inv2 = omega.reciprocal()
        inv2 = inv2 * inv2
        zero = sp.constant(0.0)
        g = [[zero for _ in range(dim)] for _ in range(dim)]
        g[0][1] = g[1][0] = inv2 * (-1.0)
        for a in range(2, dim):
            g[a][a] = inv2
        return g

    return metric_from_function(fn, dim, chart=chart, label=f"conformal(lam={lam})")


# -- jet-valued linear algebra ---------------------------------------------------

def _value_matrix(m: np.ndarray) -> np.ndarray:
    d = m.shape[0]
    return np.array([[m[i, j].value for j in range(d)] for i in range(d)])


def invert_jet_matrix(m: np.ndarray) -> np.ndarray:
    """Inverse of a matrix of jets via a truncated Neumann series.

    Writes M = M0 + N with M0 the value part; the series in M0^-1 N
    terminates at the jet order because N has no constant term.
    """
    d = m.shape[0]
    sp = m[0, 0].space
    vals = _value_matrix(m)
    cond = np.linalg.cond(vals)
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        raise SingularMetric(f"metric value matrix has condition {cond:.3e}")
    m0inv = np.linalg.inv(vals)

    def const_matrix(a):
        out = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                out[i, j] = sp.constant(a[i, j])
        return out

    def matmul(a, b):
        out = np.empty((d, d), dtype=object)
        for i in range(d):
            for j in range(d):
                acc = a[i, 0] * b[0, j]
                for k in range(1, d):
                    acc = acc + a[i, k] * b[k, j]
                out[i, j] = acc
        return out

    b = const_matrix(m0inv)
    n = np.empty((d, d), dtype=object)
    for i in range(d):
        for j in range(d):
            n[i, j] = m[i, j] - vals[i, j]
    out = b
    term = b
    for _ in range(sp.order):
        term = matmul(const_matrix(-m0inv), matmul(n, term))
        for i in range(d):
            for j in range(d):
                out[i, j] = out[i, j] + term[i, j]
    return out


# -- curvature --------------------------------------------------------------------

def christoffel_at(g: MetricField, point, order: int = 2) -> np.ndarray:
    """Christoffel symbols Gamma^rho_{mu nu} as jets of order ``order - 1``.

    Gamma^rho_{mu nu} = 1/2 g^{rho sigma} (d_mu g_{sigma nu}
                        + d_nu g_{sigma mu} - d_sigma g_{mu nu}).
    """
    if order < 1:
        raise InsufficientOrder("christoffel symbols need jets of order >= 1")
    d = g.dim
    m = g.eval(point, order=order)
    ginv = invert_jet_matrix(m)
    dg = np.empty((d, d, d), dtype=object)  # dg[k][i][j] = d_k g_ij
    for i in range(d):
        for j in range(i, d):
            for k in range(d):
                der = m[i, j].derivative(k)
                dg[k, i, j] = der
                dg[k, j, i] = der
    gamma = np.empty((d, d, d), dtype=object)
    for rho in range(d):
        for mu in range(d):
            for nu in range(mu, d):
                acc = None
                for sig in range(d):
                    term = dg[mu, sig, nu] + dg[nu, sig, mu] - dg[sig, mu, nu]
                    contrib = ginv[rho, sig].truncated(term.space.order) * term
                    acc = contrib if acc is None else acc + contrib
                val = acc * 0.5
                gamma[rho, mu, nu] = val
                gamma[rho, nu, mu] = val
    return gamma


def riemann_at(g: MetricField, point) -> np.ndarray:
    """Fully lowered curvature values R_{rho sigma mu nu} at a point.

    R^rho_{sigma mu nu} = d_mu Gamma^rho_{nu sigma} - d_nu Gamma^rho_{mu sigma}
                          + Gamma^rho_{mu lam} Gamma^lam_{nu sigma}
                          - Gamma^rho_{nu lam} Gamma^lam_{mu sigma}.
    """
    d = g.dim
    gamma = christoffel_at(g, point, order=2)
    gam_v = np.array([[[gamma[r, m, n].value for n in range(d)] for m in range(d)]
                      for r in range(d)])
    dgam = np.array([[[[gamma[r, m, n].derivative(k).value for n in range(d)]
                       for m in range(d)] for r in range(d)] for k in range(d)])
    up = np.empty((d, d, d, d))
    for rho in range(d):
        for sig in range(d):
            for mu in range(d):
                for nu in range(d):
                    up[rho, sig, mu, nu] = (
                        dgam[mu, rho, nu, sig] - dgam[nu, rho, mu, sig]
                        + np.dot(gam_v[rho, mu, :], gam_v[:, nu, sig])
                        - np.dot(gam_v[rho, nu, :], gam_v[:, mu, sig])
                    )
    vals = g.values(point)
    return np.einsum("rk,ksmn->rsmn", vals, up)


def constant_curvature_residual(g: MetricField, point, K: float) -> float:
    """max |R_{rsmn} - K (g_rm g_sn - g_rn g_sm)| over all index combinations."""
    riem = riemann_at(g, point)
    vals = g.values(point)
    model = K * (np.einsum("rm,sn->rsmn", vals, vals)
                 - np.einsum("rn,sm->rsmn", vals, vals))
    return float(np.max(np.abs(riem - model)))


def signature_of(matrix, zero_tol: float = 1e-10):
    """Eigenvalue signature (n_minus, n_zero, n_plus) of a symmetric matrix."""
    m = np.asarray(matrix, dtype=float)
    eig = np.linalg.eigvalsh(0.5 * (m + m.T))
    scale = float(np.max(np.abs(eig))) if eig.size else 0.0
    tol = zero_tol * scale
    n_minus = int(np.sum(eig < -tol))
    n_plus = int(np.sum(eig > tol))
    return (n_minus, len(eig) - n_minus - n_plus, n_plus)


@dataclass(frozen=True)
class CurvatureReport:
    point: tuple
    max_abs_riemann: float
    constant_curvature_residual: float
    K_used: float


def curvature_report(g: MetricField, point, K: float) -> CurvatureReport:
    riem = riemann_at(g, point)
    vals = g.values(point)
    model = K * (np.einsum("rm,sn->rsmn", vals, vals)
                 - np.einsum("rn,sm->rsmn", vals, vals))
    return CurvatureReport(
        point=tuple(np.asarray(point, dtype=float).tolist()),
        max_abs_riemann=float(np.max(np.abs(riem))),
        constant_curvature_residual=float(np.max(np.abs(riem - model))),
        K_used=float(K),
    )
