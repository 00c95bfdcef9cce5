"""Truncated multivariate Taylor ("jet") arithmetic.

A jet stores the value of a scalar function together with all of its partial
derivatives up to a fixed total order (at most 4) at one point.  Arithmetic
on jets propagates derivatives exactly: sums, products, quotients, powers and
the elementary functions used by the jump-function grammar are closed at
fixed order.  This is the differentiation currency of the whole package;
nothing downstream ever finite-differences a metric component.

Internally a jet keeps Taylor *coefficients* c_alpha = d^alpha f / alpha! on
a canonical graded basis of multi-indices, so that multiplication is a
truncated polynomial product driven by a precomputed index table.
"""

from __future__ import annotations

import math
from itertools import product as _cartesian

import numpy as np

from .errors import DomainError, InsufficientOrder

MAX_ORDER = 4

_SPACES: dict[tuple[int, int], "JetSpace"] = {}


def _factorial_prod(mi):
    out = 1
    for k in mi:
        out *= math.factorial(k)
    return out


class JetSpace:
    """Basis bookkeeping for jets with ``nvars`` variables at a fixed order.

    Instances are interned: request them through :func:`jet_space`.
    """

    __slots__ = (
        "nvars", "order", "terms", "index", "_mul_table", "_diff_maps",
        "_embed_cache", "_alpha_fact",
    )

    def __init__(self, nvars: int, order: int):
        if nvars < 1:
            raise ValueError("jet space needs at least one variable")
        if not 0 <= order <= MAX_ORDER:
            raise InsufficientOrder(f"jet order must be in 0..{MAX_ORDER}, got {order}")
        self.nvars = nvars
        self.order = order
        terms = []
        for deg in range(order + 1):
            layer = [mi for mi in _cartesian(range(deg + 1), repeat=nvars) if sum(mi) == deg]
            layer.sort(reverse=True)
            terms.extend(layer)
        self.terms = tuple(terms)
        self.index = {mi: i for i, mi in enumerate(self.terms)}
        self._alpha_fact = np.array([_factorial_prod(mi) for mi in self.terms], dtype=float)
        self._mul_table = None
        self._diff_maps = {}
        self._embed_cache = {}

    # -- tables -----------------------------------------------------------

    @property
    def mul_table(self):
        if self._mul_table is None:
            ia, ib, iout = [], [], []
            for i, a in enumerate(self.terms):
                da = sum(a)
                for j, b in enumerate(self.terms):
                    if da + sum(b) > self.order:
                        continue
                    ia.append(i)
                    ib.append(j)
                    iout.append(self.index[tuple(x + y for x, y in zip(a, b))])
            self._mul_table = (
                np.asarray(ia, dtype=np.intp),
                np.asarray(ib, dtype=np.intp),
                np.asarray(iout, dtype=np.intp),
            )
        return self._mul_table

    def diff_map(self, i: int):
        """Index map implementing d/dx_i into the order-1-lower space."""
        if self.order == 0:
            raise InsufficientOrder("cannot differentiate an order-0 jet")
        if i not in self._diff_maps:
            lower = jet_space(self.nvars, self.order - 1)
            src, fac = [], []
            for mi in lower.terms:
                up = list(mi)
                up[i] += 1
                src.append(self.index[tuple(up)])
                fac.append(up[i])
            self._diff_maps[i] = (lower, np.asarray(src, dtype=np.intp),
                                  np.asarray(fac, dtype=float))
        return self._diff_maps[i]

    def embed_map(self, dst: "JetSpace", positions: tuple[int, ...]):
        """Index map sending variable ``k`` of this space to ``positions[k]`` of ``dst``."""
        key = (dst.nvars, dst.order, positions)
        if key not in self._embed_cache:
            if dst.order < self.order:
                raise InsufficientOrder("cannot embed into a lower-order space")
            if len(positions) != self.nvars or len(set(positions)) != self.nvars:
                raise ValueError("embedding positions must be distinct, one per variable")
            idx = []
            for mi in self.terms:
                target = [0] * dst.nvars
                for k, p in enumerate(positions):
                    target[p] = mi[k]
                idx.append(dst.index[tuple(target)])
            self._embed_cache[key] = np.asarray(idx, dtype=np.intp)
        return self._embed_cache[key]

    # -- constructors ------------------------------------------------------

    def constant(self, x: float) -> "JetScalar":
        c = np.zeros(len(self.terms))
        c[0] = float(x)
        return JetScalar(self, c)

    def variable(self, i: int, value: float) -> "JetScalar":
        c = np.zeros(len(self.terms))
        c[0] = float(value)
        if self.order >= 1:
            e_i = tuple(1 if k == i else 0 for k in range(self.nvars))
            c[self.index[e_i]] = 1.0
        return JetScalar(self, c)

    def point(self, values) -> list["JetScalar"]:
        """Variable jets for a full coordinate tuple."""
        if len(values) != self.nvars:
            raise ValueError("point length does not match the number of variables")
        return [self.variable(i, x) for i, x in enumerate(values)]

    def __repr__(self):
        return f"JetSpace(nvars={self.nvars}, order={self.order})"


def jet_space(nvars: int, order: int) -> JetSpace:
    key = (nvars, order)
    if key not in _SPACES:
        _SPACES[key] = JetSpace(nvars, order)
    return _SPACES[key]


class JetScalar:
    """A scalar value with partial derivatives up to ``space.order``."""

    __slots__ = ("space", "c")

    def __init__(self, space: JetSpace, coeffs: np.ndarray):
        self.space = space
        self.c = coeffs

    # -- inspection ---------------------------------------------------------

    @property
    def value(self) -> float:
        return float(self.c[0])

    @property
    def order(self) -> int:
        return self.space.order

    def partial(self, mi) -> float:
        """True partial derivative for a multi-index (value for all-zero)."""
        mi = tuple(mi)
        if sum(mi) > self.space.order:
            raise InsufficientOrder(f"partial {mi} exceeds jet order {self.space.order}")
        i = self.space.index[mi]
        return float(self.c[i] * self.space._alpha_fact[i])

    @property
    def partials(self) -> dict:
        """All stored partials keyed by canonical multi-index."""
        raw = self.c * self.space._alpha_fact
        return {mi: float(raw[i]) for i, mi in enumerate(self.space.terms)}

    def gradient(self) -> np.ndarray:
        return np.array([self.partial(tuple(1 if k == i else 0 for k in range(self.space.nvars)))
                         for i in range(self.space.nvars)])

    def __repr__(self):
        return f"JetScalar(value={self.value!r}, nvars={self.space.nvars}, order={self.space.order})"

    # -- structural ops -----------------------------------------------------

    def truncated(self, order: int) -> "JetScalar":
        if order == self.space.order:
            return self
        if order > self.space.order:
            raise InsufficientOrder("cannot raise jet order by truncation")
        lower = jet_space(self.space.nvars, order)
        return JetScalar(lower, self.c[: len(lower.terms)].copy())

    def derivative(self, i: int) -> "JetScalar":
        """Exact jet of the i-th partial derivative (one order lower)."""
        lower, src, fac = self.space.diff_map(i)
        return JetScalar(lower, self.c[src] * fac)

    def embed(self, dst: JetSpace, positions) -> "JetScalar":
        """View this jet in a larger space, mapping variable k to positions[k]."""
        idx = self.space.embed_map(dst, tuple(positions))
        c = np.zeros(len(dst.terms))
        c[idx] = self.c
        return JetScalar(dst, c)

    # -- arithmetic ----------------------------------------------------------

    def _pair(self, other):
        if self.space is other.space:
            return self, other
        if self.space.nvars != other.space.nvars:
            raise ValueError("jets live over different variable sets")
        k = min(self.space.order, other.space.order)
        return self.truncated(k), other.truncated(k)

    def __add__(self, other):
        if isinstance(other, JetScalar):
            a, b = self._pair(other)
            return JetScalar(a.space, a.c + b.c)
        c = self.c.copy()
        c[0] += float(other)
        return JetScalar(self.space, c)

    __radd__ = __add__

    def __neg__(self):
        return JetScalar(self.space, -self.c)

    def __sub__(self, other):
        return self.__add__(-other if isinstance(other, JetScalar) else -float(other))

    def __rsub__(self, other):
        return (-self).__add__(float(other))

    def __mul__(self, other):
        if isinstance(other, JetScalar):
            a, b = self._pair(other)
            ia, ib, iout = a.space.mul_table
            prod = a.c[ia] * b.c[ib]
            return JetScalar(a.space, np.bincount(iout, weights=prod,
                                                  minlength=len(a.space.terms)))
        return JetScalar(self.space, self.c * float(other))

    __rmul__ = __mul__

    def reciprocal(self) -> "JetScalar":
        v = self.value
        if v == 0.0:
            raise DomainError("division by a jet with zero value")
        taylor = [(-1.0) ** k / v ** (k + 1) for k in range(self.space.order + 1)]
        return self.compose(taylor)

    def __truediv__(self, other):
        if isinstance(other, JetScalar):
            a, b = self._pair(other)
            return a * b.reciprocal()
        return JetScalar(self.space, self.c / float(other))

    def __rtruediv__(self, other):
        return self.reciprocal() * float(other)

    def __pow__(self, exponent):
        if isinstance(exponent, JetScalar):
            raise DomainError("exponent must be a constant")
        if float(exponent) == int(exponent):
            return self._int_pow(int(exponent))
        p = float(exponent)
        v = self.value
        if v <= 0.0:
            raise DomainError("non-integer power of a non-positive base")
        taylor = []
        coef = 1.0
        for k in range(self.space.order + 1):
            taylor.append(coef * v ** (p - k) / math.factorial(k))
            coef *= (p - k)
        return self.compose(taylor)

    def _int_pow(self, n: int) -> "JetScalar":
        if n < 0:
            return self.reciprocal()._int_pow(-n)
        out = self.space.constant(1.0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- composition with a univariate Taylor series --------------------------

    def compose(self, taylor) -> "JetScalar":
        """Jet of f(self) given Taylor coefficients of f about self.value.

        ``taylor[k]`` must be f^(k)(value) / k!  for k = 0 .. order.
        """
        n = self.space.order + 1
        coeffs = list(taylor[:n]) + [0.0] * max(0, n - len(taylor))
        u = JetScalar(self.space, self.c.copy())
        u.c[0] = 0.0
        out = self.space.constant(coeffs[-1])
        for k in range(n - 2, -1, -1):
            out = out * u + coeffs[k]
        return out


# -- elementary functions ----------------------------------------------------
#
# Each wrapper accepts a plain number or a JetScalar.  Jet paths feed the
# derivative values of the outer function into JetScalar.compose.

def _taylor_from_derivs(derivs, order):
    return [derivs[k] / math.factorial(k) for k in range(order + 1)]


def exp(x):
    if not isinstance(x, JetScalar):
        return math.exp(x)
    e = math.exp(x.value)
    return x.compose(_taylor_from_derivs([e] * (x.order + 1), x.order))


def log(x):
    if not isinstance(x, JetScalar):
        if x <= 0.0:
            raise DomainError("log of a non-positive argument")
        return math.log(x)
    v = x.value
    if v <= 0.0:
        raise DomainError("log of a non-positive argument")
    derivs = [math.log(v)]
    for k in range(1, x.order + 1):
        derivs.append((-1.0) ** (k - 1) * math.factorial(k - 1) / v ** k)
    return x.compose(_taylor_from_derivs(derivs, x.order))


def sqrt(x):
    if not isinstance(x, JetScalar):
        if x < 0.0:
            raise DomainError("sqrt of a negative argument")
        return math.sqrt(x)
    v = x.value
    if v < 0.0:
        raise DomainError("sqrt of a negative argument")
    if v == 0.0:
        raise DomainError("sqrt is not jet-differentiable at zero")
    return x ** 0.5


def sin(x):
    if not isinstance(x, JetScalar):
        return math.sin(x)
    s, c = math.sin(x.value), math.cos(x.value)
    cycle = [s, c, -s, -c]
    derivs = [cycle[k % 4] for k in range(x.order + 1)]
    return x.compose(_taylor_from_derivs(derivs, x.order))


def cos(x):
    if not isinstance(x, JetScalar):
        return math.cos(x)
    s, c = math.sin(x.value), math.cos(x.value)
    cycle = [c, -s, -c, s]
    derivs = [cycle[k % 4] for k in range(x.order + 1)]
    return x.compose(_taylor_from_derivs(derivs, x.order))


def cosh(x):
    if not isinstance(x, JetScalar):
        return math.cosh(x)
    ch, sh = math.cosh(x.value), math.sinh(x.value)
    derivs = [ch if k % 2 == 0 else sh for k in range(x.order + 1)]
    return x.compose(_taylor_from_derivs(derivs, x.order))


def sinh(x):
    if not isinstance(x, JetScalar):
        return math.sinh(x)
    ch, sh = math.cosh(x.value), math.sinh(x.value)
    derivs = [sh if k % 2 == 0 else ch for k in range(x.order + 1)]
    return x.compose(_taylor_from_derivs(derivs, x.order))


def tanh(x):
    # Derivatives expressed as polynomials in t = tanh(x): stable for large |x|
    # where cosh overflows.
    if not isinstance(x, JetScalar):
        return math.tanh(x)
    t = math.tanh(x.value)
    sech2 = 1.0 - t * t
    derivs = [
        t,
        sech2,
        -2.0 * t * sech2,
        (6.0 * t * t - 2.0) * sech2,
        (16.0 * t - 24.0 * t ** 3) * sech2,
    ]
    return x.compose(_taylor_from_derivs(derivs[: x.order + 1], x.order))


def erf(x):
    # d^{k+1}/dx^{k+1} erf = (-1)^k H_k(x) erf'(x) with Hermite H_k.
    if not isinstance(x, JetScalar):
        return math.erf(x)
    v = x.value
    g = 2.0 / math.sqrt(math.pi) * math.exp(-v * v)
    derivs = [
        math.erf(v),
        g,
        -2.0 * v * g,
        (4.0 * v * v - 2.0) * g,
        (12.0 * v - 8.0 * v ** 3) * g,
    ]
    return x.compose(_taylor_from_derivs(derivs[: x.order + 1], x.order))


FUNCTIONS = {
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "cosh": cosh,
    "sinh": sinh,
    "tanh": tanh,
    "erf": erf,
}
