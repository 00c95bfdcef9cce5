"""Mollifiers, model-product pairings, and weak-limit checks.

A mollifier is a smooth unit-mass bump supported in [-1, 1]; scaling it to
width epsilon gives a delta-net rho_eps whose primitive theta_eps
regularizes the Heaviside function.  Products such as theta * delta are
evaluated as the weak limit of theta_eps * rho_eps against test functions;
the limits of interest here are mollifier-independent.

The weak-limit check integrates the epsilon-regularized distributional
metric against test functions and compares the extrapolated limit with the
same pairing of the Lipschitz metric.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate

from .errors import QuadratureFailure
from .jets import JetScalar
from .metric_assembly import lipschitz_metric, regularized_distributional_metric

BUMP_NORMALIZATION = 315.0 / 256.0  # 1 / integral of (1 - x^2)^4 over [-1, 1]


def _poly_eval(poly: Polynomial, x):
    if isinstance(x, JetScalar):
        out = x.space.constant(poly.coef[-1])
        for c in poly.coef[-2::-1]:
            out = out * x + c
        return out
    return poly(x)


@dataclass(frozen=True)
class Mollifier:
    """Unit-mass smooth bump on [-1, 1] with an exact polynomial primitive."""

    kind: str
    density_poly: Polynomial
    primitive_poly: Polynomial  # primitive with value 0 at x = -1

    def rho(self, x):
        v = x.value if isinstance(x, JetScalar) else x
        if abs(v) >= 1.0:
            return x.space.constant(0.0) if isinstance(x, JetScalar) else 0.0
        return _poly_eval(self.density_poly, x)

    def theta(self, x):
        v = x.value if isinstance(x, JetScalar) else x
        if v <= -1.0:
            return x.space.constant(0.0) if isinstance(x, JetScalar) else 0.0
        if v >= 1.0:
            return x.space.constant(1.0) if isinstance(x, JetScalar) else 1.0
        return _poly_eval(self.primitive_poly, x)

    def rho_eps(self, x, eps: float):
        return self.rho(x * (1.0 / eps)) * (1.0 / eps)

    def theta_eps(self, x, eps: float):
        return self.theta(x * (1.0 / eps))

    def moment(self, fn, tol: float = 1e-13) -> float:
        """Integral of fn(t, rho(t), theta(t)) over the unit support."""
        val, err = integrate.quad(
            lambda t: fn(t, float(self.density_poly(t)), float(self.primitive_poly(t))),
            -1.0, 1.0, epsabs=tol, epsrel=tol, limit=200)
        if err > 1e-10:
            raise QuadratureFailure(f"moment integral error estimate {err:.2e}")
        return val


def make_mollifier(kind: str = "poly_bump") -> Mollifier:
    """poly_bump: C (1 - x^2)^4;  tilted_bump: C (1 - x^2)^4 (1 + x/2).

    Both have unit integral (the tilt is odd); the tilted one has
    theta(0) != 1/2, which exercises mollifier independence of the limits.
    """
    base = Polynomial([1.0, 0.0, -1.0]) ** 4 * BUMP_NORMALIZATION
    if kind == "poly_bump":
        dens = base
    elif kind == "tilted_bump":
        dens = base * Polynomial([1.0, 0.5])
    else:
        raise ValueError(f"unknown mollifier kind {kind!r}")
    prim = dens.integ()
    prim = prim - prim(-1.0)
    return Mollifier(kind=kind, density_poly=dens, primitive_poly=prim)


# -- test functions ---------------------------------------------------------------------

@dataclass(frozen=True)
class TestBump:
    """Compactly supported polynomial test function (1 - (u/w)^2)^4_+ u^k."""

    width: float = 1.0
    power: int = 0

    def __call__(self, u: float) -> float:
        s = u / self.width
        if abs(s) >= 1.0:
            return 0.0
        return (1.0 - s * s) ** 4 * u ** self.power


def standard_test_functions(width: float = 1.0):
    return [TestBump(width=width, power=k) for k in (0, 1, 2)]


# -- extrapolation -----------------------------------------------------------------------

@dataclass(frozen=True)
class PairingResult:
    epsilons: tuple
    values: tuple
    limit: float
    order: float  # estimated convergence rate; inf when values are constant

    def residual_to(self, target: float) -> float:
        return abs(self.limit - target)


def _fit_order(eps, vals, scale):
    diffs = np.diff(vals)
    orders = []
    for k in range(len(diffs) - 1):
        if abs(diffs[k + 1]) > 1e-14 * scale and abs(diffs[k]) > 1e-14 * scale:
            ratio = abs(diffs[k]) / abs(diffs[k + 1])
            step = eps[k] / eps[k + 1]
            if ratio > 1.0 and step > 1.0:
                orders.append(math.log(ratio) / math.log(step))
    if not orders:
        return None
    q = float(np.median(orders))
    # integrands expand in integer powers of eps; snap a near-integer fit so
    # the elimination is exact and the next power shows through cleanly
    if abs(q - round(q)) < 0.02 and round(q) >= 1:
        return float(round(q))
    return q


def extrapolate(epsilons, values) -> PairingResult:
    """Limit estimate from a decreasing epsilon sequence.

    Fits the dominant power from successive differences and applies
    Richardson elimination, iterating on the transformed sequence while it
    keeps contracting; the reported order is the leading fitted power, not
    an assumption.  Constant and noise-level sequences short-circuit.
    """
    eps = np.asarray(epsilons, dtype=float)
    vals = np.asarray(values, dtype=float)
    if len(eps) < 2:
        return PairingResult(tuple(eps), tuple(vals), float(vals[-1]), math.inf)
    if np.any(np.diff(eps) >= 0.0):
        raise ValueError("epsilon sequence must be strictly decreasing")
    scale = max(1.0, float(np.max(np.abs(vals))))
    if np.all(np.abs(np.diff(vals)) <= 1e-13 * scale):
        return PairingResult(tuple(epsilons), tuple(values), float(vals[-1]), math.inf)
    leading = None
    cur_eps, cur = eps, vals
    while len(cur) >= 3:
        q = _fit_order(cur_eps, cur, scale)
        if q is None or q <= 0.05:
            break
        if leading is None:
            leading = q
        ratios = cur_eps[:-1] / cur_eps[1:]
        nxt = cur[1:] + (cur[1:] - cur[:-1]) / (ratios ** q - 1.0)
        if np.all(np.abs(np.diff(nxt)) >= np.abs(np.diff(cur))[1:] - 1e-14 * scale):
            break  # transformation stopped contracting
        cur_eps, cur = cur_eps[1:], nxt
        if np.all(np.abs(np.diff(cur)) <= 1e-13 * scale):
            break
    if leading is None:
        # no resolvable power: the sequence converges to its tail value
        return PairingResult(tuple(epsilons), tuple(values), float(vals[-1]), 0.0)
    return PairingResult(tuple(epsilons), tuple(values), float(cur[-1]), leading)


# -- model products -----------------------------------------------------------------------

_LEFT_FACTORS = ("theta", "delta", "theta_sq")
_RIGHT_FACTORS = ("delta", "one")


def model_product_pairing(left: str, right: str, phi, epsilons,
                          mollifier: Mollifier | None = None) -> PairingResult:
    """<f_eps g_eps, phi> for f in {theta, delta, theta^2}, g in {delta, 1}.

    Uses adaptive Gauss-Kronrod quadrature with explicit break points at the
    regularization scale, then extrapolates the epsilon limit.
    """
    if left not in _LEFT_FACTORS:
        raise ValueError(f"left factor must be one of {_LEFT_FACTORS}")
    if right not in _RIGHT_FACTORS:
        raise ValueError(f"right factor must be one of {_RIGHT_FACTORS}")
    moll = mollifier if mollifier is not None else make_mollifier()
    width = getattr(phi, "width", 1.0)
    values = []
    for eps in epsilons:
        def integrand(u):
            if left == "theta":
                f = moll.theta_eps(u, eps)
            elif left == "delta":
                f = moll.rho_eps(u, eps)
            else:
                t = moll.theta_eps(u, eps)
                f = t * t
            if right == "delta":
                f = f * moll.rho_eps(u, eps)
            return f * phi(u)

        if right == "delta":
            lo, hi = -eps, eps
        else:
            lo, hi = -max(width, eps), max(width, eps)
        pts = [p for p in (-eps, 0.0, eps) if lo < p < hi]
        val, err = integrate.quad(integrand, lo, hi, points=pts,
                                  epsabs=1e-12, epsrel=1e-12, limit=400)
        if err > 1e-9 * max(1.0, abs(val)):
            raise QuadratureFailure(f"pairing quadrature error {err:.2e} at eps={eps}")
        values.append(val)
    return extrapolate(epsilons, values)


def one_minus_theta_product(kind: str, phi, epsilons,
                            mollifier: Mollifier | None = None) -> PairingResult:
    """<(1-theta_eps) g_eps, phi> for g in {one_minus_theta, theta, delta}."""
    moll = mollifier if mollifier is not None else make_mollifier()
    width = getattr(phi, "width", 1.0)
    values = []
    for eps in epsilons:
        def integrand(u):
            om = 1.0 - moll.theta_eps(u, eps)
            if kind == "one_minus_theta":
                f = om * om
            elif kind == "theta":
                f = om * moll.theta_eps(u, eps)
            elif kind == "delta":
                f = om * moll.rho_eps(u, eps)
            else:
                raise ValueError(f"unknown kind {kind!r}")
            return f * phi(u)

        lo, hi = (-eps, eps) if kind == "delta" else (-max(width, eps), max(width, eps))
        pts = [p for p in (-eps, 0.0, eps) if lo < p < hi]
        val, err = integrate.quad(integrand, lo, hi, points=pts,
                                  epsabs=1e-12, epsrel=1e-12, limit=400)
        if err > 1e-9 * max(1.0, abs(val)):
            raise QuadratureFailure(f"pairing quadrature error {err:.2e} at eps={eps}")
        values.append(val)
    return extrapolate(epsilons, values)


def theta_delta_mass(mollifier: Mollifier | None = None) -> float:
    """integral of theta_eps rho_eps du, an epsilon-independent telescoping
    identity (exactly 1/2); computed in the scaled variable."""
    moll = mollifier if mollifier is not None else make_mollifier()
    return moll.moment(lambda t, rho, theta: theta * rho)


def heaviside_pairing(phi, lo: float = 0.0) -> float:
    """<theta, phi>: the target of the theta^2 pairing."""
    width = getattr(phi, "width", 1.0)
    val, err = integrate.quad(phi, lo, width, epsabs=1e-12, epsrel=1e-12, limit=200)
    if err > 1e-10:
        raise QuadratureFailure(f"target quadrature error {err:.2e}")
    return val


# -- fixed-panel quadrature for metric pairings ---------------------------------------------

def _panel_nodes(breaks, n):
    x, w = np.polynomial.legendre.leggauss(n)
    nodes, weights = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        nodes.append(mid + half * x)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


@dataclass(frozen=True)
class WeakLimitResult:
    component: tuple
    pairing: PairingResult
    target: float

    @property
    def residual(self) -> float:
        return abs(self.pairing.limit - self.target)

    @property
    def rate(self) -> float:
        return self.pairing.order


def weak_metric_check(h, lam: float, components, phi, v: float, z, epsilons,
                      mollifier: Mollifier | None = None,
                      n_quad: int = 24) -> dict:
    """Weak-limit comparison of the regularized and Lipschitz metrics.

    For each requested component (mu, nu), integrates
    g^eps_{mu nu}(u; v, z) phi(u) du over the u-line, extrapolates the
    epsilon limit, and compares with the same pairing of the Lipschitz
    metric.  Returns {component: WeakLimitResult}.
    """
    moll = mollifier if mollifier is not None else make_mollifier()
    z = np.atleast_1d(np.asarray(z, dtype=float))
    dim = h.dim_n + 1
    if components == "all":
        components = [(i, j) for i in range(dim) for j in range(i, dim)]
    width = getattr(phi, "width", 1.0)

    # Lipschitz targets: panel quadrature split at the kink
    def lipschitz_values(u):
        m = lipschitz_metric(h, lam, np.concatenate(([u, v], z)), order=0)
        return np.array([[m[i, j].value for j in range(dim)] for i in range(dim)])

    def panel_integrate(breaks, evaluator, n):
        nodes, weights = _panel_nodes(breaks, n)
        mats = np.array([evaluator(u) for u in nodes])
        phis = np.array([phi(u) for u in nodes])
        return np.einsum("k,kij->ij", weights * phis, mats)

    t_lo = panel_integrate([-width, 0.0, width], lipschitz_values, n_quad)
    t_hi = panel_integrate([-width, 0.0, width], lipschitz_values, n_quad * 2)
    if np.max(np.abs(t_lo - t_hi)) > 1e-10:
        raise QuadratureFailure("Lipschitz pairing did not converge under refinement")

    per_eps = []
    for eps in epsilons:
        breaks = sorted({-width, -eps, 0.0, eps, width})
        evaluator = lambda u: regularized_distributional_metric(
            h, lam, moll, eps, np.concatenate(([u, v], z)))
        lo = panel_integrate(breaks, evaluator, n_quad)
        hi = panel_integrate(breaks, evaluator, n_quad * 2)
        if np.max(np.abs(lo - hi)) > 1e-9 * max(1.0, float(np.max(np.abs(hi)))):
            raise QuadratureFailure(f"metric pairing did not converge at eps={eps}")
        per_eps.append(hi)

    out = {}
    for (i, j) in components:
        vals = [m[i, j] for m in per_eps]
        pairing = extrapolate(epsilons, vals)
        out[(i, j)] = WeakLimitResult(component=(i, j), pairing=pairing,
                                      target=float(t_hi[i, j]))
    return out
