"""Command-line workbench: verification suite, shell reports, figure data,
regularization-product tables, and expression parsing.

Commands
--------
verify       run the invariant suite (junction, curvature, continuity,
             pullback, geodesic extension, aligning-isometry checks) and
             write a structured JSON report; exit 0 iff every check passes
shell-report classification and rho/j/p statistics over the configured grid
figure-data  CSV of (v, r, dvH, p, rho, jr) for the four-parameter family
products     model-product pairing table for both mollifiers
parse        dump the AST of a jump expression

Configuration is TOML (``--config``); command-line flags override it.
``--print-config-schema`` prints the schema with all defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import distribution_lab as dlab
from . import matching_engine as me
from . import metric_assembly as ma
from . import shell_physics as sph
from . import tensor_core as tc
from .errors import NullShellError
from .expressions import ast_to_dict, parse_expression
from .jump_functions import JumpFunction, check_admissibility, make_builtin, parse_jump_expression

GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))

CONFIG_SCHEMA = """\
# nullshell configuration (TOML). All values shown are the defaults.

lambda = 0.0          # cosmological constant (0: flat, >0: dS, <0: AdS)
dim_n = 3             # matching-hypersurface dimension (spacetime is dim_n + 1)

[jump]
expression = "v"      # jump function in the expression grammar, or use family
# family = "example"  # one of: linear, wave, example
# a = 4.0
# b = 2.0
# c = 1.0
# h0 = 1.1

[grid]
v = [-3.0, 3.0, 0.25]   # lo, hi, step
r = [0.3, 3.0, 0.1]     # lo, hi, step (must avoid r = 0)

[regularization]
epsilons = [1e-1, 3.16227766016838e-2, 1e-2, 3.16227766016838e-3, 1e-3, 3.16227766016838e-4, 1e-4]
test_function_width = 1.0

[tolerances]
flatness = 1.0e-8        # max |Riemann| (lambda = 0) / constant-curvature residual
junction_flat = 1.0e-10
junction_curved = 1.0e-9
pullback = 1.0e-9
geodesic = 1.0e-9
continuity = 1.0e-12
xi_aligning = 1.0e-10
product = 1.0e-8
product_mass = 1.0e-14
"""

DEFAULT_EPSILONS = (1e-1, 10.0 ** -1.5, 1e-2, 10.0 ** -2.5, 1e-3, 10.0 ** -3.5, 1e-4)


@dataclass
class RunConfig:
    lam: float = 0.0
    dim_n: int = 3
    jump_expression: str = "v"
    jump_family: str | None = None
    family_params: dict = field(default_factory=dict)
    v_range: tuple = (-3.0, 3.0, 0.25)
    r_range: tuple = (0.3, 3.0, 0.1)
    epsilons: tuple = DEFAULT_EPSILONS
    test_function_width: float = 1.0
    tolerances: dict = field(default_factory=dict)
    out: str | None = None

    DEFAULT_TOLERANCES = {
        "flatness": 1e-8,
        "junction_flat": 1e-10,
        "junction_curved": 1e-9,
        "pullback": 1e-9,
        "geodesic": 1e-9,
        "continuity": 1e-12,
        "xi_aligning": 1e-10,
        "product": 1e-8,
        "product_mass": 1e-14,
    }

    def tol(self, name: str) -> float:
        return float(self.tolerances.get(name, self.DEFAULT_TOLERANCES[name]))

    def jump_function(self) -> JumpFunction:
        if self.jump_family:
            return make_builtin(self.jump_family, self.dim_n, **self.family_params)
        return parse_jump_expression(self.jump_expression, self.dim_n)

    def grid_values(self, which: str) -> np.ndarray:
        lo, hi, step = self.v_range if which == "v" else self.r_range
        if step <= 0.0:
            raise ValueError(f"{which}-range step must be positive")
        n = int(math.floor((hi - lo) / step + 1e-9)) + 1
        vals = lo + step * np.arange(n)
        if which == "r" and np.any(vals <= 0.0):
            raise ValueError("r grid must stay strictly positive (density diverges at r = 0)")
        return vals


def _parse_range(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("range must be lo:hi:step")
    return tuple(float(p) for p in parts)


def load_config(args) -> RunConfig:
    cfg = RunConfig()
    if args.config:
        with open(args.config, "rb") as fh:
            data = tomllib.load(fh)
        cfg.lam = float(data.get("lambda", cfg.lam))
        cfg.dim_n = int(data.get("dim_n", cfg.dim_n))
        jump = data.get("jump", {})
        if "family" in jump:
            cfg.jump_family = jump["family"]
            cfg.family_params = {k: v for k, v in jump.items() if k != "family"}
        elif "expression" in jump:
            cfg.jump_expression = jump["expression"]
        grid = data.get("grid", {})
        if "v" in grid:
            cfg.v_range = tuple(float(x) for x in grid["v"])
        if "r" in grid:
            cfg.r_range = tuple(float(x) for x in grid["r"])
        reg = data.get("regularization", {})
        if "epsilons" in reg:
            cfg.epsilons = tuple(float(x) for x in reg["epsilons"])
        if "test_function_width" in reg:
            cfg.test_function_width = float(reg["test_function_width"])
        cfg.tolerances = dict(data.get("tolerances", {}))

    if getattr(args, "lam", None) is not None:
        cfg.lam = args.lam
    if getattr(args, "expr", None) is not None:
        cfg.jump_expression = args.expr
        cfg.jump_family = None
    family_flags = {k: getattr(args, k) for k in ("a", "b", "c", "h0")
                    if getattr(args, k, None) is not None}
    if family_flags:
        cfg.jump_family = "example"
        cfg.family_params = {**{"a": 4.0, "b": 2.0, "c": 1.0, "h0": 1.1}, **family_flags}
    if getattr(args, "v_range", None) is not None:
        cfg.v_range = args.v_range
    if getattr(args, "r_range", None) is not None:
        cfg.r_range = args.r_range
    if getattr(args, "eps", None) is not None:
        cfg.epsilons = tuple(float(x) for x in args.eps.split(","))
    cfg.out = getattr(args, "out", None)
    return cfg


# -- sampling helpers ----------------------------------------------------------------

def _z_direction(k: int, nt: int) -> np.ndarray:
    d = np.zeros(nt)
    if nt == 1:
        d[0] = 1.0
    else:
        ang = k * GOLDEN_ANGLE
        d[0] = math.cos(ang)
        d[1] = math.sin(ang)
    return d


def _surface_samples(cfg: RunConfig, count: int):
    """Deterministic (v, z) samples spread over the configured grid.

    For lambda != 0 the flat-chart cover of the shell is bounded (the
    conformal factor 1 + lambda |z|^2 / 12 must stay away from zero), so
    points outside it are skipped.
    """
    vs = cfg.grid_values("v")
    rs = cfg.grid_values("r")
    nt = cfg.dim_n - 1
    out = []
    k = 0
    while len(out) < count and k < 8 * count:
        v = vs[(k * 7) % len(vs)]
        r = rs[(k * 5) % len(rs)]
        z = r * _z_direction(k, nt)
        k += 1
        if cfg.lam != 0.0:
            omega_n = 1.0 + cfg.lam / 12.0 * float(np.dot(z, z))
            if abs(omega_n) < 0.2:
                continue
        out.append((float(v), z))
    return out


def _bulk_samples(cfg: RunConfig, count: int, positive_u: bool = False):
    """Unit-scale (u, v, z) probes off the shell, inside the conformal chart.

    Curvature-type checks are calibrated for unit-scale charts; for
    lambda != 0 the flat-chart cover is also only a neighbourhood of the
    shell, so probes with a small conformal factor are skipped.
    """
    u_vals = [0.2, -0.4, 0.7, -0.9, 0.5, -0.15, 1.0, -0.65]
    v_vals = [0.0, 0.4, -0.8, 0.6, -0.3, 0.9, -0.55, 0.15]
    r_vals = [0.4, 0.8, 1.2, 0.6, 1.0]
    nt = cfg.dim_n - 1
    out = []
    k = 0
    while len(out) < count and k < 8 * count:
        u = u_vals[k % len(u_vals)]
        if positive_u:
            u = abs(u)
        v = v_vals[k % len(v_vals)]
        z = r_vals[k % len(r_vals)] * _z_direction(k, nt)
        k += 1
        if cfg.lam != 0.0:
            omega = 1.0 + cfg.lam / 12.0 * (float(np.dot(z, z)) - 2.0 * u * v)
            if abs(omega) < 0.3:
                continue
        out.append(np.concatenate(([u, v], z)))
    return out


# -- commands ---------------------------------------------------------------------------

def _emit(payload: dict, out_path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if out_path:
        with open(out_path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(cfg: RunConfig) -> int:
    h = cfg.jump_function()
    lam = cfg.lam
    checks = []

    def record(name, value, tol, passed=None):
        ok = bool(value <= tol) if passed is None else bool(passed)
        checks.append({"name": name, "value": float(value),
                       "tolerance": float(tol), "passed": ok})

    surface = _surface_samples(cfg, 50)
    adm = check_admissibility(h, surface)
    record("admissibility_min_dv", adm.min_dv, 0.0, passed=adm.admissible)
    if not adm.admissible:
        payload = {"command": "verify", "lambda": lam, "jump": str(h),
                   "checks": checks, "failures": ["admissibility_min_dv"],
                   "passed": False,
                   "note": "jump function inadmissible; remaining checks skipped"}
        _emit(payload, cfg.out)
        return 1

    junction_tol = cfg.tol("junction_flat") if lam == 0.0 else cfg.tol("junction_curved")
    jr = me.verify_junction(h, lam, surface)
    record("junction", jr.max_residual, junction_tol,
           passed=jr.passed(junction_tol))

    fld = ma.lipschitz_metric_field(h, lam)
    k_const = lam / 3.0
    worst = 0.0
    for p in _bulk_samples(cfg, 20):
        worst = max(worst, tc.constant_curvature_residual(fld, p, k_const))
    record("constant_curvature" if lam != 0.0 else "flatness", worst, cfg.tol("flatness"))

    worst = 0.0
    for v, z in surface[:20]:
        gm = ma.lipschitz_metric(h, lam, np.concatenate(([0.0, v], z)), order=0, side="minus")
        gp = ma.lipschitz_metric(h, lam, np.concatenate(([0.0, v], z)), order=0, side="plus")
        d = max(abs(gm[i, j].value - gp[i, j].value)
                for i in range(h.dim_n + 1) for j in range(h.dim_n + 1))
        worst = max(worst, d)
    record("continuity", worst, cfg.tol("continuity"))

    worst = 0.0
    for p in _bulk_samples(cfg, 50, positive_u=True):
        pb = me.pullback_plus_metric(h, lam, p)
        ga = ma.lipschitz_metric(h, lam, p)
        gav = np.array([[ga[i, j].value for j in range(h.dim_n + 1)]
                        for i in range(h.dim_n + 1)])
        worst = max(worst, float(np.max(np.abs(pb - gav))))
    record("pullback_identity", worst, cfg.tol("pullback"))

    ge = me.verify_geodesic_extension(lam, h, _bulk_samples(cfg, 20, positive_u=True))
    record("geodesic_extension",
           max(ge.max_null_norm, ge.max_geodesic_residual, ge.max_second_u_derivative),
           cfg.tol("geodesic"))

    xa = me.shell_xi_aligning_report(h, lam, [np.concatenate(([v], z)) for v, z in surface[:20]])
    record("xi_aligning", max(xa.max_tangent, xa.max_pairing, xa.max_norm),
           cfg.tol("xi_aligning"))

    # mismatched half-plane metrics: the aligning check must detect the
    # failure with a norm residual of exactly 1
    g1 = lambda x: np.diag([1.0, 1.0])
    g2 = lambda x: np.diag([1.0, 2.0])
    embed = lambda sj: (sj[0], sj[0].space.constant(0.0))
    xi = lambda s: np.array([0.0, 1.0])
    cx = me.verify_xi_aligning(g1, g2, embed, embed, xi, xi, [[0.0], [1.0], [-0.5]])
    record("xi_aligning_counterexample_detected", abs(cx.max_norm - 1.0), 1e-12,
           passed=(abs(cx.max_norm - 1.0) <= 1e-12 and not cx.passed(1e-10)))

    failures = [c["name"] for c in checks if not c["passed"]]
    payload = {
        "command": "verify",
        "lambda": lam,
        "jump": str(h),
        "checks": checks,
        "failures": failures,
        "passed": not failures,
    }
    _emit(payload, cfg.out)
    return 0 if not failures else 1


def cmd_shell_report(cfg: RunConfig) -> int:
    h = cfg.jump_function()
    vs = cfg.grid_values("v")
    rs = cfg.grid_values("r")
    nt = cfg.dim_n - 1
    grid = [(float(v), r * _z_direction(k, nt))
            for k, (v, r) in enumerate((v, r) for v in vs for r in rs)]
    cls = sph.classify_shell(h, grid)
    rows = []
    for v, z in grid:
        rho, flux, p = sph.shell_scalars(h, v, z)
        r = float(np.linalg.norm(z))
        jr = float(np.dot(z, flux) / r) if r > 0 else 0.0
        rows.append((rho, p, jr))
    arr = np.asarray(rows)
    adm = check_admissibility(h, grid)

    def stats(col):
        return {"min": float(np.min(col)), "max": float(np.max(col)),
                "mean": float(np.mean(col))}

    payload = {
        "command": "shell-report",
        "jump": str(h),
        "classification": cls.value,
        "epsilon_sign_convention": sph.EPSILON_SIGN,
        "n_points": len(grid),
        "admissible": adm.admissible,
        "min_dv": adm.min_dv,
        "rho": stats(arr[:, 0]),
        "pressure": stats(arr[:, 1]),
        "j_radial": stats(arr[:, 2]),
    }
    _emit(payload, cfg.out)
    return 0


def cmd_figure_data(cfg: RunConfig) -> int:
    if cfg.jump_family != "example":
        raise NullShellError("figure-data needs the four-parameter family "
                             "(--a/--b/--c/--h0 or [jump] family = 'example')")
    p = cfg.family_params
    a, b, c, h0 = (float(p[k]) for k in ("a", "b", "c", "h0"))
    vs = cfg.grid_values("v")
    rs = cfg.grid_values("r")
    lines = ["v,r,dvH,p,rho,jr"]
    fmt = lambda x: format(float(x), ".17g")
    for v in vs:
        for r in rs:
            dv_h, pr, rho, jr = sph.example_closed_forms(a, b, c, h0, float(v), float(r))
            lines.append(",".join(fmt(x) for x in (v, r, dv_h, pr, rho, jr)))
    text = "\n".join(lines) + "\n"
    if cfg.out:
        with open(cfg.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_products(cfg: RunConfig) -> int:
    eps = tuple(cfg.epsilons)
    phi = dlab.TestBump(width=cfg.test_function_width, power=0)
    tol = cfg.tol("product")
    mass_tol = cfg.tol("product_mass")
    rows = []
    failures = []
    theta_target = dlab.heaviside_pairing(phi)

    for kind in ("poly_bump", "tilted_bump"):
        moll = dlab.make_mollifier(kind)
        mass = dlab.theta_delta_mass(moll)
        if abs(mass - 0.5) > mass_tol:
            failures.append(f"{kind}:mass")
        r_td = dlab.model_product_pairing("theta", "delta", phi, eps, moll)
        if r_td.residual_to(0.5 * phi(0.0)) > tol:
            failures.append(f"{kind}:theta_delta")
        r_t2 = dlab.model_product_pairing("theta_sq", "one", phi, eps, moll)
        if r_t2.residual_to(theta_target) > tol:
            failures.append(f"{kind}:theta_sq")
        r_d = dlab.model_product_pairing("delta", "one", phi, eps, moll)
        if r_d.residual_to(phi(0.0)) > tol:
            failures.append(f"{kind}:delta")
        com = {}
        om_target = {"one_minus_theta": dlab.heaviside_pairing(phi) * 0.0, "theta": 0.0,
                     "delta": 0.5 * phi(0.0)}
        import scipy.integrate as _si
        om_target["one_minus_theta"] = _si.quad(phi, -phi.width, 0.0, epsabs=1e-12)[0]
        for k in ("one_minus_theta", "theta", "delta"):
            rr = dlab.one_minus_theta_product(k, phi, eps, moll)
            com[k] = {"limit": rr.limit, "target": om_target[k],
                      "residual": rr.residual_to(om_target[k]), "order": rr.order}
            if com[k]["residual"] > tol:
                failures.append(f"{kind}:one_minus_theta*{k}")
        rows.append({
            "mollifier": kind,
            "theta_at_zero": moll.theta(0.0),
            "mass_theta_delta": mass,
            "theta_delta": {"limit": r_td.limit, "target": 0.5 * phi(0.0),
                            "residual": r_td.residual_to(0.5 * phi(0.0)),
                            "order": r_td.order},
            "theta_sq": {"limit": r_t2.limit, "target": theta_target,
                         "residual": r_t2.residual_to(theta_target), "order": r_t2.order},
            "delta": {"limit": r_d.limit, "target": phi(0.0),
                      "residual": r_d.residual_to(phi(0.0)), "order": r_d.order},
            "one_minus_theta_products": com,
        })

    payload = {"command": "products", "epsilons": list(eps),
               "test_function": {"width": phi.width, "power": phi.power},
               "mollifiers": rows, "failures": failures, "passed": not failures}
    _emit(payload, cfg.out)
    return 0 if not failures else 1


def cmd_parse(cfg: RunConfig, expr: str) -> int:
    node = parse_expression(expr, cfg.dim_n)
    payload = {"command": "parse", "expression": expr, "dim_n": cfg.dim_n,
               "ast": ast_to_dict(node)}
    _emit(payload, cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nullshell",
        description="Numerical workbench for null-shell matchings of "
                    "constant-curvature spacetimes.")
    ap.add_argument("--print-config-schema", action="store_true",
                    help="print the TOML configuration schema and exit")
    sub = ap.add_subparsers(dest="command")
    for name, doc in (("verify", "run the invariant suite"),
                      ("shell-report", "classification and shell statistics"),
                      ("figure-data", "CSV sweep of the four-parameter family"),
                      ("products", "model-product pairing table"),
                      ("parse", "dump a jump-expression AST")):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", help="TOML configuration file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--lambda", dest="lam", type=float, help="cosmological constant")
        p.add_argument("--expr", help="jump-function expression")
        p.add_argument("--a", type=float, help="family parameter a")
        p.add_argument("--b", type=float, help="family parameter b")
        p.add_argument("--c", type=float, help="family parameter c")
        p.add_argument("--h0", type=float, help="family parameter h0")
        p.add_argument("--v-range", type=_parse_range, help="lo:hi:step")
        p.add_argument("--r-range", type=_parse_range, help="lo:hi:step")
        p.add_argument("--eps", help="comma-separated epsilon sequence")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.print_config_schema:
        sys.stdout.write(CONFIG_SCHEMA)
        return 0
    if not args.command:
        ap.print_help()
        return 2
    try:
        cfg = load_config(args)
        if args.command == "verify":
            return cmd_verify(cfg)
        if args.command == "shell-report":
            return cmd_shell_report(cfg)
        if args.command == "figure-data":
            return cmd_figure_data(cfg)
        if args.command == "products":
            return cmd_products(cfg)
        if args.command == "parse":
            if not args.expr:
                ap.error("parse needs --expr")
            return cmd_parse(cfg, args.expr)
    except NullShellError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
