"""Jump functions H(v, z^A): construction, differentiation, admissibility.

The jump function is the single object encoding a matching: it gives the
shift along the null generators when crossing the shell.  It must satisfy
dH/dv > 0 wherever it is used.  Three builtin families cover the cases of
interest (linear / no shell, wave-type a*v + F(z), and the four-parameter
family with pressure, flux and energy density); arbitrary expressions in the
grammar of :mod:`nullshell.expressions` are accepted as well, and a jump
function can also be reconstructed from a prescribed pressure profile by
integrating dH/dv.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import expressions as ex
from . import jets
from .errors import (ConstraintViolation, DomainError, NonPositiveDerivative,
                     StepSizeError, WrongDimension)
from .jets import JetScalar, jet_space


@dataclass(frozen=True)
class JumpFunction:
    """A jump function over an n-dimensional matching hypersurface.

    ``dim_n`` is the hypersurface dimension: coordinates are v and the n-1
    transverse coordinates z2..zn.  ``body`` is an expression AST evaluated
    with jet arithmetic; tabulated jump functions (from a pressure profile)
    carry a sampler instead.
    """

    dim_n: int
    body: object
    family: str = "expression"
    params: dict = field(default_factory=dict)
    sampler: Optional[object] = None

    @property
    def n_transverse(self) -> int:
        return self.dim_n - 1

    def eval_with(self, v, z_values):
        """Evaluate the body on numbers or jets (any jet space).

        ``z_values`` must hold one entry per transverse coordinate.
        """
        if self.sampler is not None:
            raise DomainError("tabulated jump functions only support jets() at grid nodes")
        if len(z_values) != self.n_transverse:
            raise WrongDimension(
                f"expected {self.n_transverse} transverse coordinates, got {len(z_values)}")
        env = {"v": v}
        for k, zv in enumerate(z_values):
            env[f"z{k + 2}"] = zv
        return ex.evaluate(self.body, env)

    def jets(self, v: float, z, order: int = 4) -> JetScalar:
        """Jet of H at (v, z) with all partials of total degree <= order."""
        z = np.atleast_1d(np.asarray(z, dtype=float))
        if self.sampler is not None:
            return self.sampler(float(v), z, order)
        sp = jet_space(self.dim_n, order)
        coords = sp.point([float(v), *z])
        return self.eval_with(coords[0], coords[1:])

    def dv(self, v: float, z) -> float:
        """First v-derivative (the admissibility quantity)."""
        return self.jets(v, z, order=1).partial((1,) + (0,) * self.n_transverse)

    def __str__(self):
        if self.sampler is not None:
            return f"<tabulated jump function, dim_n={self.dim_n}>"
        return ex.to_string(self.body)


def parse_jump_expression(text: str, dim_n: int) -> JumpFunction:
    """Parse expression text into a JumpFunction (see the module grammar)."""
    return JumpFunction(dim_n=dim_n, body=ex.parse_expression(text, dim_n))


# -- builtin families -----------------------------------------------------------

def _num(x):
    return ex.Num(float(x))


def _linear_body(a, b, c, dim_n):
    node: ex.Node = ex.Bin("*", _num(a), ex.Var("v"))
    for k, bk in enumerate(b):
        if bk != 0.0:
            node = ex.Bin("+", node, ex.Bin("*", _num(bk), ex.Var(f"z{k + 2}")))
    if c != 0.0:
        node = ex.Bin("+", node, _num(c))
    return node


def make_builtin(family: str, dim_n: int, **params) -> JumpFunction:
    """Construct a builtin jump function.

    linear(a, b, c):      H = a*v + sum_J b_J z^J + c, a > 0 (no shell)
    wave(a, hz):          H = a*v + F(z), a > 0, F an expression in z only
    example(a, b, c, h0): the four-parameter family
                          H = a*v - b*log(cosh(v)) - c*tanh(r)*exp(-v^2)
                              - (h0*r^2/4)*erf(r)
                          subject to b >= 2c >= 0, h0 >= c, a > b + c
                          (transverse dimension 2, i.e. dim_n = 3).
    """
    if family == "linear":
        a = float(params.get("a", 1.0))
        c = float(params.get("c", 0.0))
        b = np.asarray(params.get("b", np.zeros(dim_n - 1)), dtype=float)
        if a <= 0:
            raise ConstraintViolation("linear family requires a > 0")
        if b.shape != (dim_n - 1,):
            raise WrongDimension("linear family needs one b coefficient per z coordinate")
        body = _linear_body(a, b, c, dim_n)
        return JumpFunction(dim_n, body, family="linear",
                            params={"a": a, "b": tuple(b), "c": c})

    if family == "wave":
        a = float(params.get("a", 1.0))
        if a <= 0:
            raise ConstraintViolation("wave family requires a > 0")
        hz = params["hz"]
        if isinstance(hz, str):
            hz = ex.parse_expression(hz, dim_n)
        if _mentions_v(hz):
            raise ConstraintViolation("wave family profile must not depend on v")
        body = ex.Bin("+", ex.Bin("*", _num(a), ex.Var("v")), hz)
        return JumpFunction(dim_n, body, family="wave", params={"a": a, "hz": hz})

    if family == "example":
        a, b, c, h0 = (float(params[k]) for k in ("a", "b", "c", "h0"))
        if dim_n != 3:
            raise WrongDimension("example family is defined for dim_n = 3")
        check_example_constraints(a, b, c, h0)
        body = ex.parse_expression(
            f"{a!r}*v - {b!r}*log(cosh(v)) - {c!r}*tanh(r)*exp(-v^2)"
            f" - ({h0!r}*r^2/4)*erf(r)", dim_n)
        return JumpFunction(dim_n, body, family="example",
                            params={"a": a, "b": b, "c": c, "h0": h0})

    raise ValueError(f"unknown builtin family {family!r}")


def check_example_constraints(a: float, b: float, c: float, h0: float) -> None:
    if not c >= 0:
        raise ConstraintViolation("c >= 0")
    if not b >= 2 * c:
        raise ConstraintViolation("b >= 2c")
    if not h0 >= c:
        raise ConstraintViolation("h0 >= c")
    if not a > b + c:
        raise ConstraintViolation("a > b + c")


def _mentions_v(node) -> bool:
    if isinstance(node, ex.Var):
        return node.name == "v"
    if isinstance(node, ex.Num):
        return False
    if isinstance(node, ex.Neg):
        return _mentions_v(node.arg)
    if isinstance(node, ex.Call):
        return _mentions_v(node.arg)
    if isinstance(node, ex.Pow):
        return _mentions_v(node.base)
    return _mentions_v(node.left) or _mentions_v(node.right)


# -- admissibility ----------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    min_dv: float
    argmin: tuple
    n_points: int

    @property
    def admissible(self) -> bool:
        return self.min_dv > 0.0


def check_admissibility(h: JumpFunction, grid) -> AdmissibilityReport:
    """Minimum of dH/dv over the grid of (v, z) points; pass iff positive."""
    best = math.inf
    argmin = None
    count = 0
    for v, z in grid:
        d = h.dv(v, z)
        count += 1
        if d < best:
            best = d
            argmin = (float(v), tuple(np.atleast_1d(z).tolist()))
    return AdmissibilityReport(min_dv=best, argmin=argmin, n_points=count)


# -- reconstruction from a pressure profile ----------------------------------------

@dataclass(frozen=True)
class PressureProfile:
    """Shell pressure plus integration data for reconstructing H.

    ``pressure(v, z_jets)`` returns the pressure at parameter v as a jet in
    the transverse coordinates (pointwise in v).  ``beta(z_jets)`` is the
    value of dH/dv at the grid origin and ``hz(z_jets)`` the additive
    v-independent profile.
    """

    dim_n: int
    pressure: Callable
    beta: Callable
    hz: Callable


class _TabulatedJets:
    """Jet sampler for a grid-reconstructed jump function.

    v-derivatives of the user pressure are not available analytically
    (the profile is pointwise in v), so third and fourth pure-v partials
    fall back to centred differences of the stored trajectory.
    """

    def __init__(self, v_nodes, h_jets, w_jets, p_jets, base_z):
        self.v_nodes = v_nodes
        self.h_jets = h_jets          # z-space jets of H(v_i, .)
        self.w_jets = w_jets          # z-space jets of dH/dv
        self.p_jets = p_jets          # z-space jets of the pressure
        self.base_z = base_z

    def _node(self, v):
        i = int(np.argmin(np.abs(self.v_nodes - v)))
        if abs(self.v_nodes[i] - v) > 1e-9 * max(1.0, abs(v)):
            raise DomainError(f"tabulated jump function defined at grid nodes only, got v={v}")
        return i

    def _dv_stack(self, i):
        """z-jets of d^k H/dv^k at node i for k = 0..4."""
        h_i, w, p = self.h_jets[i], self.w_jets[i], self.p_jets[i]
        dw = -1.0 * (p * w)
        vv = self.v_nodes
        # pressure v-derivatives from the grid (centred where possible)
        dp = _grid_derivative(self.p_jets, vv, i, 1)
        d2p = _grid_derivative(self.p_jets, vv, i, 2)
        d2w = -(dp * w) - (p * dw)
        d3w = -(d2p * w) - 2.0 * (dp * dw) - (p * d2w)
        return [h_i, w, dw, d2w, d3w]

    def __call__(self, v, z, order):
        i = self._node(v)
        if np.max(np.abs(np.asarray(z, dtype=float) - self.base_z)) > 1e-12:
            raise DomainError("tabulated jump function is expanded about its base z point")
        stack = self._dv_stack(i)
        nz = len(self.base_z)
        sp = jet_space(nz + 1, order)
        coeffs = np.zeros(len(sp.terms))
        for pos, mi in enumerate(sp.terms):
            kv, alpha = mi[0], mi[1:]
            if kv > 4 or sum(alpha) > stack[0].space.order:
                continue
            zjet = stack[kv]
            if sum(alpha) > zjet.space.order:
                continue
            coeffs[pos] = zjet.c[zjet.space.index[alpha]] / math.factorial(kv)
        return jets.JetScalar(sp, coeffs)


def _grid_derivative(jet_list, v_nodes, i, order):
    """Finite difference of a z-jet trajectory along the v grid at node i."""
    h = v_nodes[1] - v_nodes[0]
    n = len(v_nodes)
    if 1 <= i <= n - 2:
        a, b, c = jet_list[i - 1], jet_list[i], jet_list[i + 1]
        if order == 1:
            return (c - a) * (0.5 / h)
        return (a - 2.0 * b + c) * (1.0 / (h * h))
    if i == 0:
        a, b, c = jet_list[0], jet_list[1], jet_list[2]
        if order == 1:
            return (a * (-3.0) + b * 4.0 - c) * (0.5 / h)
        return (a - 2.0 * b + c) * (1.0 / (h * h))
    a, b, c = jet_list[n - 3], jet_list[n - 2], jet_list[n - 1]
    if order == 1:
        return (a - b * 4.0 + c * 3.0) * (0.5 / h)
    return (a - 2.0 * b + c) * (1.0 / (h * h))


def from_pressure(profile: PressureProfile, v_grid, base_z=None,
                  z_order: int = 4, step_tol: float = 1e-6) -> JumpFunction:
    """Reconstruct H from its pressure: integrates w' = -p w, H' = w.

    ``w = dH/dv`` starts at beta(z) on the first grid node and H at hz(z).
    The state carries jets in the transverse coordinates through a classical
    4th-order one-step integrator; a step-halving rerun guards the step size
    (StepSizeError when the two runs disagree beyond ``step_tol``).
    """
    v_nodes = np.asarray(v_grid, dtype=float)
    if v_nodes.ndim != 1 or len(v_nodes) < 3:
        raise ValueError("v grid must be a 1-d array with at least 3 nodes")
    steps = np.diff(v_nodes)
    if not np.allclose(steps, steps[0], rtol=1e-12, atol=1e-15):
        raise ValueError("v grid must be uniform")
    nz = profile.dim_n - 1
    if base_z is None:
        base_z = np.zeros(nz)
    base_z = np.asarray(base_z, dtype=float)

    sp = jet_space(nz, z_order)
    z_jets = [sp.variable(k, base_z[k]) for k in range(nz)]

    def rhs(v, w):
        return -1.0 * (profile.pressure(v, z_jets) * w)

    def integrate(substeps):
        w = profile.beta(z_jets)
        if not isinstance(w, JetScalar):
            w = sp.constant(w)
        if w.value <= 0.0:
            raise NonPositiveDerivative(f"beta = {w.value} <= 0 at the grid origin")
        h_acc = profile.hz(z_jets)
        if not isinstance(h_acc, JetScalar):
            h_acc = sp.constant(h_acc)
        ws = [w]
        hs = [h_acc]
        for i in range(len(v_nodes) - 1):
            h = steps[0] / substeps
            v = v_nodes[i]
            for _ in range(substeps):
                # classical RK4 on the joint state (H, w)
                k1w = rhs(v, w)
                k1h = w
                k2w = rhs(v + h / 2, w + k1w * (h / 2))
                k2h = w + k1w * (h / 2)
                k3w = rhs(v + h / 2, w + k2w * (h / 2))
                k3h = w + k2w * (h / 2)
                k4w = rhs(v + h, w + k3w * h)
                k4h = w + k3w * h
                w = w + (k1w + 2.0 * k2w + 2.0 * k3w + k4w) * (h / 6.0)
                h_acc = h_acc + (k1h + 2.0 * k2h + 2.0 * k3h + k4h) * (h / 6.0)
                v += h
            if w.value <= 0.0:
                raise NonPositiveDerivative(
                    f"reconstructed dH/dv = {w.value} <= 0 at v = {v_nodes[i + 1]}")
            ws.append(w)
            hs.append(h_acc)
        return ws, hs

    ws, hs = integrate(1)
    ws2, _ = integrate(2)
    worst = max(float(np.max(np.abs(a.c - b.c))) for a, b in zip(ws, ws2))
    if worst > step_tol:
        raise StepSizeError(
            f"step-halving check failed: jet mismatch {worst:.3e} > {step_tol:.1e}")

    p_jets = [profile.pressure(v, z_jets) for v in v_nodes]
    p_jets = [p if isinstance(p, JetScalar) else sp.constant(p) for p in p_jets]
    sampler = _TabulatedJets(v_nodes, hs, ws, p_jets, base_z)
    return JumpFunction(dim_n=profile.dim_n, body=None, family="from_pressure",
                        params={}, sampler=sampler)
