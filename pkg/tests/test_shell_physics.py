"""Shell content: jump tensors, energy-momentum, scalars, classification."""

import math

import numpy as np
import pytest

from nullshell import shell_physics as sp
from nullshell.errors import ConstraintViolation, DomainError, NonPositiveDerivative
from nullshell.jump_functions import make_builtin, parse_jump_expression

FAMILY = make_builtin("example", 3, a=4, b=2, c=1, h0=1.1)


def surface_grid(v_lo=-4.0, v_hi=4.0, r_lo=0.05, r_hi=4.0, nv=17, nr=12):
    grid = []
    for i, v in enumerate(np.linspace(v_lo, v_hi, nv)):
        for r in np.linspace(r_lo, r_hi, nr):
            ang = 0.7 * i
            grid.append((float(v), r * np.array([math.cos(ang), math.sin(ang)])))
    return grid


# -- flat jump tensor ---------------------------------------------------------------

def test_linear_jump_tensor_vanishes():
    h = parse_jump_expression("v", 3)
    assert np.max(np.abs(sp.jump_tensor_minkowski(h, 0.3, [1.0, 2.0]))) == 0.0


def test_quadratic_jump_tensor():
    h = parse_jump_expression("v - (z2^2 + z3^2)/2", 3)
    y = sp.jump_tensor_minkowski(h, 0.4, [0.3, -0.2])
    expect = np.zeros((3, 3))
    expect[1, 1] = expect[2, 2] = 1.0
    assert np.max(np.abs(y - expect)) == 0.0


def test_log_cosh_pressure_component():
    h = parse_jump_expression("2*v - log(cosh(v))", 3)
    y = sp.jump_tensor_minkowski(h, 0.0, [0.5, 0.5])
    assert y[0, 0] == pytest.approx(0.5, abs=1e-15)
    assert np.max(np.abs(y - np.diag([y[0, 0], 0, 0]))) == 0.0


def test_nonpositive_slope_raises():
    h = parse_jump_expression("-v", 3)
    with pytest.raises(NonPositiveDerivative):
        sp.jump_tensor_minkowski(h, 0.0, [1.0, 0.0])


# -- general jump tensor ---------------------------------------------------------------

def test_general_reduces_to_minkowski_with_flat_leaf(rng):
    geom = sp.flat_leaf_geometry(3)
    for _ in range(10):
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.3, 2.0, 2)
        d = sp.jump_tensor_general(FAMILY, geom, v, z) - sp.jump_tensor_minkowski(FAMILY, v, z)
        assert np.max(np.abs(d)) <= 1e-14


def test_constant_transverse_tensor():
    t = np.array([[0.3, 0.1], [0.4, -0.2]])  # deliberately non-symmetric
    flat = sp.flat_leaf_geometry(3)
    geom = sp.LeafGeometry(3, flat.h,
                           lambda v, z: np.zeros(2), lambda v, z: np.zeros(2),
                           lambda v, z: t, lambda v, z: np.zeros((2, 2)))
    h = parse_jump_expression("v", 3)
    y = sp.jump_tensor_general(h, geom, 0.1, [0.2, 0.3])
    assert np.max(np.abs(y[1:, 1:] + 0.5 * (t + t.T))) <= 1e-15
    assert abs(y[0, 0]) == 0.0


def test_general_matches_ads_formula(rng):
    for lam in (3.0, -3.0):
        geom = sp.ads_leaf_geometry(FAMILY, lam)
        worst = 0.0
        for _ in range(100):
            v = rng.uniform(-2, 2)
            z = rng.uniform(0.2, 1.6, 2)
            d = sp.jump_tensor_general(FAMILY, geom, v, z) - sp.jump_tensor_ads(FAMILY, lam, v, z)
            worst = max(worst, float(np.max(np.abs(d))))
        assert worst <= 1e-10


def test_ads_reduces_to_flat_at_lambda_zero(rng):
    for _ in range(10):
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.2, 2.0, 2)
        d = sp.jump_tensor_ads(FAMILY, 0.0, v, z) - sp.jump_tensor_minkowski(FAMILY, v, z)
        assert np.max(np.abs(d)) == 0.0


def test_ads_linear_jump_correction_vanishes():
    h = parse_jump_expression("v", 3)
    y = sp.jump_tensor_ads(h, 5.0, 1.3, [0.4, 0.1])
    assert np.max(np.abs(y)) == 0.0


def test_ads_hand_value():
    # H = 2v: correction (v dHv - H) = 0; H = 2v + 1: correction -1/4 on the diagonal
    h1 = parse_jump_expression("2*v", 3)
    y1 = sp.jump_tensor_ads(h1, 3.0, 1.0, [0.0, 0.0])
    assert np.max(np.abs(y1)) == 0.0
    h2 = parse_jump_expression("2*v + 1", 3)
    y2 = sp.jump_tensor_ads(h2, 3.0, 1.0, [0.0, 0.0])
    assert y2[1, 1] == pytest.approx(-0.25) and y2[2, 2] == pytest.approx(-0.25)
    assert y2[0, 0] == 0.0 and y2[0, 1] == 0.0


# -- energy momentum --------------------------------------------------------------------

def test_zero_jump_zero_tau():
    geom = sp.flat_leaf_geometry(3)
    tau = sp.energy_momentum(np.zeros((3, 3)), geom)
    assert tau["vv"] == 0.0 and np.all(tau["vI"] == 0) and np.all(tau["IJ"] == 0)


def test_tau_reproduces_scalars(rng):
    geom = sp.flat_leaf_geometry(3)
    for _ in range(20):
        v = rng.uniform(-2, 2)
        z = rng.uniform(0.3, 2.0, 2)
        y = sp.jump_tensor_minkowski(FAMILY, v, z)
        tau = sp.energy_momentum(y, geom, v, z)
        rho, flux, p = sp.shell_scalars(FAMILY, v, z)
        assert tau["vv"] == pytest.approx(rho, abs=1e-14)
        assert np.allclose(tau["vI"], flux, atol=1e-14)
        assert np.allclose(tau["IJ"], p * np.eye(2), atol=1e-14)


def test_scaled_leaf_metric():
    def h2(zj):
        spc = zj[0].space
        m = np.empty((2, 2), dtype=object)
        for i in range(2):
            for j in range(2):
                m[i, j] = spc.constant(2.0 if i == j else 0.0)
        return m

    geom = sp.LeafGeometry(3, h2, lambda v, z: np.zeros(2), lambda v, z: np.zeros(2),
                           lambda v, z: np.zeros((2, 2)), lambda v, z: np.zeros((2, 2)))
    y = np.zeros((3, 3))
    y[0, 0] = 1.0
    tau = sp.energy_momentum(y, geom)
    assert np.allclose(tau["IJ"], 0.5 * np.eye(2))
    assert tau["epsilon"] == -1


# -- scalars and closed forms ------------------------------------------------------------

def test_no_shell_scalars():
    h = parse_jump_expression("3*v + 2*z2 + 1", 3)
    rho, flux, p = sp.shell_scalars(h, 0.7, [1.0, -1.0])
    assert rho == 0.0 and p == 0.0 and np.all(flux == 0.0)


def test_family_point_values():
    # frozen from the closed forms: dvH(0,.) = a; p(0,1); rho(0,1); jr(0,.) = 0
    dv_h, p, rho, jr = sp.example_closed_forms(4, 2, 1, 1.1, 0.0, 1.0)
    assert dv_h == 4.0
    assert p == pytest.approx(0.11920292202211757, abs=1e-16)
    assert p == pytest.approx((2 - 2 * math.tanh(1.0)) / 4, abs=1e-16)
    assert rho == pytest.approx(0.26242722269536967, abs=1e-15)
    assert jr == 0.0


def test_log_cosh_scalars():
    h = parse_jump_expression("2*v - log(cosh(v))", 3)
    rho, flux, p = sp.shell_scalars(h, 0.0, [0.3, 0.4])
    assert p == pytest.approx(0.5, abs=1e-15)
    assert rho == 0.0 and np.all(flux == 0.0)


def test_closed_forms_validate_inputs():
    with pytest.raises(ConstraintViolation):
        sp.example_closed_forms(2, 2, 1, 1.1, 0.0, 1.0)
    with pytest.raises(DomainError):
        sp.example_closed_forms(4, 2, 1, 1.1, 0.0, 0.0)
    with pytest.raises(DomainError):
        sp.example_closed_forms(4, 2, 1, 1.1, 0.0, -1.0)


def test_scalars_match_closed_forms_500_points(rng):
    worst = 0.0
    for _ in range(500):
        v = rng.uniform(-3, 3)
        r = rng.uniform(0.05, 3.5)
        ang = rng.uniform(0, 2 * math.pi)
        z = r * np.array([math.cos(ang), math.sin(ang)])
        dv_h, p_c, rho_c, jr_c = sp.example_closed_forms(4, 2, 1, 1.1, v, r)
        rho, flux, p = sp.shell_scalars(FAMILY, v, z)
        jr = float(np.dot(z, flux)) / r
        worst = max(worst, abs(rho - rho_c), abs(p - p_c), abs(jr - jr_c),
                    abs(FAMILY.dv(v, z) - dv_h))
    assert worst <= 1e-10


# -- qualitative behaviour of the family ----------------------------------------------------

def test_family_positivity():
    for v, z in surface_grid(r_lo=0.05):
        _, p, rho, _ = sp.example_closed_forms(4, 2, 1, 1.1, v, float(np.linalg.norm(z)))
        assert p >= 0.0 and rho >= 0.0


def test_flux_sign_follows_v():
    for v in (-2.0, -0.5, 0.5, 2.0):
        for r in (0.3, 1.0, 2.5):
            _, _, _, jr = sp.example_closed_forms(4, 2, 1, 1.1, v, r)
            assert math.copysign(1.0, jr) == math.copysign(1.0, v)
    assert sp.example_closed_forms(4, 2, 1, 1.1, 0.0, 1.0)[3] == 0.0


def test_flux_decays():
    for r in (0.3, 1.0, 3.0):
        assert abs(sp.example_closed_forms(4, 2, 1, 1.1, 10.0, r)[3]) < 1e-8
        assert abs(sp.example_closed_forms(4, 2, 1, 1.1, -10.0, r)[3]) < 1e-8
    for v in np.linspace(-3, 3, 13):
        assert abs(sp.example_closed_forms(4, 2, 1, 1.1, float(v), 10.0)[3]) < 1e-8


def test_density_grows_unboundedly_towards_axis():
    rs = np.geomspace(1.0, 1e-3, 16)
    rhos = [sp.example_closed_forms(4, 2, 1, 1.1, 0.0, float(r))[2] for r in rs]
    assert all(b > a for a, b in zip(rhos, rhos[1:]))
    assert rhos[-1] > 50.0


# -- classification ---------------------------------------------------------------------

@pytest.mark.parametrize("expr,expected", [
    ("v", sp.ShellClass.NO_SHELL),
    ("3*v + 2*z2 + 1", sp.ShellClass.NO_SHELL),
    ("v + (z2^2 - z3^2)/2", sp.ShellClass.PURE_GRAVITY),   # harmonic profile
    ("v - (z2^2 + z3^2)/2", sp.ShellClass.NULL_DUST),
    ("2*v - log(cosh(v))", sp.ShellClass.GENERIC),
])
def test_classification(expr, expected):
    h = parse_jump_expression(expr, 3)
    grid = [(v, np.array([0.7, 0.4])) for v in np.linspace(-2, 2, 9)]
    assert sp.classify_shell(h, grid) is expected


def test_family_is_generic():
    grid = [(v, np.array([r, 0.5])) for v in np.linspace(-2, 2, 7) for r in (0.5, 1.5)]
    assert sp.classify_shell(FAMILY, grid) is sp.ShellClass.GENERIC


def test_shell_content_bundle():
    content = sp.shell_content(FAMILY, 0.0, [1.0, 0.0])
    assert content.pressure == pytest.approx(0.11920292202211757, abs=1e-15)
    assert content.epsilon == -1
    assert content.y_jump.shape == (3, 3)
