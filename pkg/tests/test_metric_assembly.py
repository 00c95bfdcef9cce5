"""Lipschitz metric, impulsive-term profile, Rosen form, regularized form."""

import math

import numpy as np
import pytest

from nullshell import distribution_lab as dl
from nullshell import metric_assembly as ma
from nullshell import shell_physics as sp
from nullshell import tensor_core as tc
from nullshell.errors import ConformalFactorZero, NotWaveType, WrongDimension
from nullshell.jump_functions import make_builtin, parse_jump_expression

FAMILY = make_builtin("example", 3, a=4, b=2, c=1, h0=1.1)
LOG_COSH = parse_jump_expression("2*v - log(cosh(v))", 3)


def values(g, dim=4):
    return np.array([[g[i, j].value for j in range(dim)] for i in range(dim)])


# -- Lipschitz form -----------------------------------------------------------------

def test_identity_jump_gives_flat_metric():
    h = parse_jump_expression("v", 3)
    for pt in ([0.5, 0.2, 1.0, 1.0], [-0.7, -1.0, 0.3, 0.3], [0.0, 0.0, 1.0, 0.0]):
        g = values(ma.lipschitz_metric(h, 0.0, pt))
        eta = np.diag([0.0, 0.0, 1.0, 1.0])
        eta[0, 1] = eta[1, 0] = -1.0
        assert np.max(np.abs(g - eta)) == 0.0


def test_log_cosh_closed_form_metric(rng):
    # g = -2 du dv + dz^2 - 2 u_+ cosh^-2(v) (2 - tanh v)^-1 dv^2
    worst = 0.0
    for _ in range(100):
        u = rng.uniform(-1, 1)
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.2, 2.0, 2)
        g = values(ma.lipschitz_metric(LOG_COSH, 0.0, np.concatenate(([u, v], z))))
        expect = np.diag([0.0, 0.0, 1.0, 1.0])
        expect[0, 1] = expect[1, 0] = -1.0
        expect[1, 1] = -2 * max(u, 0.0) / math.cosh(v) ** 2 / (2 - math.tanh(v))
        worst = max(worst, float(np.max(np.abs(g - expect))))
    assert worst <= 1e-12


def test_sides_agree_on_the_shell(rng):
    for _ in range(20):
        pt = np.concatenate(([0.0], [rng.uniform(-2, 2)], rng.uniform(0.3, 2.0, 2)))
        gm = values(ma.lipschitz_metric(FAMILY, 0.0, pt, side="minus"))
        gp = values(ma.lipschitz_metric(FAMILY, 0.0, pt, side="plus"))
        assert np.max(np.abs(gm - gp)) <= 1e-14


def test_lipschitz_continuity_slope(rng):
    # |g(-h) - g(+h)| <= C h with log-log slope >= 1 across the kink
    v, z = 0.8, np.array([1.0, 0.7])
    hs = np.array([1e-2, 1e-3, 1e-4])
    gaps = []
    for hh in hs:
        gm = values(ma.lipschitz_metric(FAMILY, 0.0, np.concatenate(([-hh, v], z))))
        gp = values(ma.lipschitz_metric(FAMILY, 0.0, np.concatenate(([+hh, v], z))))
        gaps.append(np.max(np.abs(gm - gp)))
    gaps = np.array(gaps)
    assert np.all(gaps > 0)
    slope = np.polyfit(np.log(hs), np.log(gaps), 1)[0]
    assert slope >= 1.0 - 1e-3
    c_fit = float(np.max(gaps / hs))
    assert np.isfinite(c_fit)


def test_metric_signature_everywhere_sampled(rng):
    for lam in (0.0, 3.0, -3.0):
        h = LOG_COSH if lam else FAMILY
        for _ in range(10):
            pt = np.concatenate((rng.uniform(-0.8, 0.8, 2), rng.uniform(0.3, 1.2, 2)))
            g = values(ma.lipschitz_metric(h, lam, pt))
            assert tc.signature_of(g) == (1, 0, 3)


def test_du_jump_encodes_jump_tensor(rng):
    # jump of -1/2 d_u g across u = 0, restricted to (v, z), equals [Y_ab]
    for _ in range(20):
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.3, 1.8, 2)
        pt = np.concatenate(([0.0, v], z))
        gp = ma.lipschitz_metric(FAMILY, 0.0, pt, order=1, side="plus")
        gm = ma.lipschitz_metric(FAMILY, 0.0, pt, order=1, side="minus")
        e_u = (1, 0, 0, 0)
        jump = np.array([[-0.5 * (gp[i, j].partial(e_u) - gm[i, j].partial(e_u))
                          for j in range(1, 4)] for i in range(1, 4)])
        y = sp.jump_tensor_minkowski(FAMILY, v, z)
        assert np.max(np.abs(jump - y)) <= 1e-9


def test_constant_curvature_of_assembled_metric(rng):
    for lam in (0.0, 3.0, -3.0):
        fld = ma.lipschitz_metric_field(LOG_COSH, lam)
        for _ in range(5):
            pt = np.array([rng.choice([-1, 1]) * rng.uniform(0.05, 0.6),
                           rng.uniform(-0.6, 0.6),
                           rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0)])
            assert tc.constant_curvature_residual(fld, pt, lam / 3.0) <= 1e-8


def test_conformal_factor_zero_raises():
    h = parse_jump_expression("v", 3)
    # lam = -3: Omega_N = 1 - |z|^2/4 vanishes at |z| = 2
    with pytest.raises(ConformalFactorZero):
        ma.lipschitz_metric(h, -3.0, [0.0, 0.0, 2.0, 0.0])


# -- impulsive profile ---------------------------------------------------------------

def test_hscript_classical_case():
    h = parse_jump_expression("v + z2^2", 3)
    # dH_v = 1: profile reduces to H - v
    assert ma.hscript(h, 0.7, [0.5, 0.2]) == pytest.approx(0.25)
    assert ma.hscript(h, -2.0, [2.0, 0.0]) == pytest.approx(4.0)


def test_hscript_log_cosh_rational_form(rng):
    for _ in range(100):
        v = rng.uniform(-3, 3)
        t = math.tanh(v)
        expect = (t - 3) * (t - 2) / ((t - 4) * t + 5) * (v - math.log(math.cosh(v)))
        assert ma.hscript(LOG_COSH, v, [0.3, 0.3]) == pytest.approx(expect, abs=1e-12)
    assert ma.hscript(LOG_COSH, 0.0, [1.0, 1.0]) == 0.0


def test_hscript_u1_rewriting(rng):
    # dHv (1 + dHv) / (1 + dHv^2) == (1 + U1)/(1 + U1^2) with U1 = 1/dHv
    from nullshell.matching_engine import transverse_coefficients
    for _ in range(20):
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.3, 1.5, 2)
        u1 = transverse_coefficients(FAMILY, v, z).u1.value
        hv = FAMILY.jets(v, z, 0).value
        expect = (1 + u1) / (1 + u1 * u1) * (hv - v)
        assert ma.hscript(FAMILY, v, z) == pytest.approx(expect, abs=1e-13)


# -- Rosen form -----------------------------------------------------------------------

def test_rosen_trivial_profile():
    h = make_builtin("wave", 3, a=1.0, hz="0")
    (wz, wzb), g = ma.rosen_form(h, [0.7, 0.4, -0.3])
    assert wz == 1.0 and wzb == 0.0
    eta = np.diag([0.0, 0.0, 1.0, 1.0])
    eta[0, 1] = eta[1, 0] = -1.0
    assert np.max(np.abs(g - eta)) <= 1e-15


def test_rosen_quadratic_profile():
    h = make_builtin("wave", 3, a=1.0, hz="(z2^2 - z3^2)/2")
    (wz, wzb), _ = ma.rosen_form(h, [0.7, 0.4, -0.3])
    assert wz == pytest.approx(1.0)
    assert wzb == pytest.approx(0.7 + 0.0j)


def test_rosen_reproduces_lipschitz(rng):
    h = make_builtin("wave", 3, a=2.0, hz="(z2^2 - z3^2)/2 + z2*z3 + 0.3*z2^2*z3")
    worst = 0.0
    for _ in range(100):
        u = rng.uniform(-1, 1)
        z = rng.uniform(-1.5, 1.5, 2)
        _, g_rosen = ma.rosen_form(h, np.concatenate(([u], z)))
        g_lip = values(ma.lipschitz_metric(h, 0.0, np.concatenate(([u, 0.0], z))))
        worst = max(worst, float(np.max(np.abs(g_rosen - g_lip))))
    assert worst <= 1e-12


def test_rosen_rejects_wrong_inputs():
    with pytest.raises(WrongDimension):
        ma.rosen_form(make_builtin("wave", 4, a=1.0, hz="z2^2"), [0.1, 0.2, 0.3, 0.4])
    with pytest.raises(NotWaveType):
        ma.rosen_form(LOG_COSH, [0.1, 0.2, 0.3])


# -- regularized distributional form -----------------------------------------------------

def test_regularized_identity_jump_is_flat():
    h = parse_jump_expression("v", 3)
    moll = dl.make_mollifier("poly_bump")
    eta = np.diag([0.0, 0.0, 1.0, 1.0])
    eta[0, 1] = eta[1, 0] = -1.0
    for eps in (0.5, 0.1, 0.01):
        for u in (-0.3, -0.01, 0.0, 0.02, 0.4):
            g = ma.regularized_distributional_metric(h, 0.0, moll, eps, [u, 0.3, 1.0, 0.5])
            assert np.max(np.abs(g - eta)) <= 1e-15


@pytest.mark.parametrize("lam,h", [(0.0, FAMILY), (3.0, LOG_COSH)])
def test_regularized_equals_lipschitz_outside_eps(lam, h, rng):
    moll = dl.make_mollifier("tilted_bump")
    eps = 0.125
    for _ in range(20):
        u = rng.choice([-1.0, 1.0]) * rng.uniform(eps * 1.001, 0.9)
        pt = np.concatenate(([u], [rng.uniform(-0.5, 0.5)], rng.uniform(0.3, 1.0, 2)))
        gr = ma.regularized_distributional_metric(h, lam, moll, eps, pt)
        gl = values(ma.lipschitz_metric(h, lam, pt))
        assert np.max(np.abs(gr - gl)) <= 1e-13


def test_discontinuous_coordinates_shift_on_the_shell():
    # at u = 0+ the coordinates implement (0, H(v,z), z)
    coords = ma.discontinuous_coordinates(FAMILY, [0.0, 0.4, 1.0, 0.5])
    hv = FAMILY.jets(0.4, [1.0, 0.5], 0).value
    assert coords[0].value == 0.0
    assert coords[1].value == pytest.approx(hv)
    assert coords[2].value == 1.0 and coords[3].value == 0.5
