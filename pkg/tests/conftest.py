"""Shared test helpers: a finite-difference oracle for jets and common fixtures.

The FD oracle composes 4th-order central stencils per variable and applies
one Richardson level in the overall step, giving ~1e-7 relative accuracy on
4th partials of smooth transcendental functions (the practical limit of
double-precision differencing).  Comparisons use a scale floor of
max(1, |partial|).
"""

from __future__ import annotations

import numpy as np
import pytest

# offsets/coefficients of 4th-order-accurate central stencils, by derivative order
_STENCILS = {
    1: ((-2, -1, 1, 2), (1 / 12, -8 / 12, 8 / 12, -1 / 12), 1),
    2: ((-2, -1, 0, 1, 2), (-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12), 2),
    3: ((-3, -2, -1, 1, 2, 3), (1 / 8, -1.0, 13 / 8, -13 / 8, 1.0, -1 / 8), 3),
    4: ((-3, -2, -1, 0, 1, 2, 3),
        (-1 / 6, 2.0, -13 / 2, 28 / 3, -13 / 2, 2.0, -1 / 6), 4),
}

_BASE_H = {1: 1e-3, 2: 4e-3, 3: 2e-2, 4: 3e-2}


def _fd_once(f, x, multi, h):
    """Tensor-product central difference for a multi-index at step h."""

    def rec(point, remaining):
        for var, order in enumerate(remaining):
            if order > 0:
                offsets, coeffs, power = _STENCILS[order]
                rest = list(remaining)
                rest[var] = 0
                acc = 0.0
                for off, c in zip(offsets, coeffs):
                    shifted = list(point)
                    shifted[var] += off * h
                    acc += c * rec(shifted, rest)
                return acc / h ** power
        return f(*point)

    return rec(list(np.asarray(x, dtype=float)), list(multi))


def fd_partial(f, x, multi, h=None):
    """Richardson-refined central-difference partial d^multi f at x."""
    total = int(sum(multi))
    if total == 0:
        return f(*np.asarray(x, dtype=float))
    h = h if h is not None else _BASE_H[min(total, 4)]
    d_h = _fd_once(f, x, multi, h)
    d_h2 = _fd_once(f, x, multi, h / 2)
    return (16.0 * d_h2 - d_h) / 15.0


def assert_jet_matches_fd(jet, f, x, rel=1e-6, orders=None, h=None):
    """Compare every stored partial of a jet against the FD oracle."""
    for mi in jet.space.terms:
        total = sum(mi)
        if total == 0:
            continue
        if orders is not None and total not in orders:
            continue
        got = jet.partial(mi)
        want = fd_partial(f, x, mi, h=h)
        scale = max(1.0, abs(got), abs(want))
        assert abs(got - want) <= rel * scale, (
            f"partial {mi}: jet {got!r} vs fd {want!r} (scale {scale:.3g})")


@pytest.fixture
def rng():
    return np.random.default_rng(20240810)
