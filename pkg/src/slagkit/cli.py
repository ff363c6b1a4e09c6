"""Command-line front end.

Usage examples::

    slagkit curve gamma --p 1 --q 0 --special --t-max 10 --out g.csv
    slagkit verify corollary2 --p 1 --q 0 --a 1,1 --grid 50x50
    slagkit pde solve --p 1 --q 0 --a1 0.5 --a2 0.5 --boundary xy --grid 33x33

Every option may also come from a configuration file (``--config run.ini``)
with a ``[slagkit]`` section whose keys are the long option names without the
leading dashes.  Command-line flags win over the file.

Exit status: 0 when every requested verification passes, 1 when one fails
(reports are still written), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import math
import sys
from pathlib import Path

import numpy as np

from . import ambient, curves, export, legendrian, matrix_orbits, pde, surfaces
from .errors import DegenerateError, NotLegendrianError, SlagkitError

log = logging.getLogger("slagkit")


class UsageError(Exception):
    """Bad flag value; reported with exit status 2."""


# -- value parsers -----------------------------------------------------------

def _nonneg_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _pos_int(text):
    v = _nonneg_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real number, got {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"expected a finite real number, got {text!r}")
    return v


def _pos_float(text):
    v = _float(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive real number, got {v}")
    return v


def _pair(text):
    parts = [p for p in str(text).replace(" ", "").split(",") if p]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated numbers, got {text!r}")
    return tuple(_float(p) for p in parts)


def _pos_pair(text):
    v = _pair(text)
    if min(v) <= 0:
        raise argparse.ArgumentTypeError(f"expected two positive numbers, got {text!r}")
    return v


def _grid(text):
    parts = str(text).lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected a grid size like 50x50, got {text!r}")
    a, b = (_pos_int(p) for p in parts)
    if a < 2 or b < 2:
        raise argparse.ArgumentTypeError(f"grid needs at least 2 points per side, got {text!r}")
    return a, b


def _bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


# -- option registry ---------------------------------------------------------
#
# Options are registered with default=None so that values coming from the
# configuration file can be told apart from values given on the command line.

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _opt(parser, name, type=None, default=None, help=None, flag=False):
    table = parser.get_default("_defaults") or {}
    types = parser.get_default("_types") or {}
    dest = name.replace("-", "_")
    if flag:
        parser.add_argument(f"--{name}", dest=dest, action="store_const", const=True, default=None, help=help)
        table[dest], types[dest] = bool(default), _bool
    else:
        parser.add_argument(f"--{name}", dest=dest, type=type, default=None, help=help)
        table[dest], types[dest] = default, type
    parser.set_defaults(_defaults=table, _types=types)


def _common(parser, tol=None, report=True):
    _opt(parser, "config", str, help="configuration file with a [slagkit] section")
    _opt(parser, "output-dir", str, ".", help="directory for relative output paths")
    _opt(parser, "verbose", flag=True, help="debug logging")
    if tol is not None:
        _opt(parser, "tol", _pos_float, tol, help=f"verification tolerance (default {tol:g})")
    if report:
        _opt(parser, "report", str, help="write the JSON verification report here")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="slagkit", description="Special Lagrangian constructions and their numerical checks.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    # curve
    cp = sub.add_parser("curve", help="integrate an alpha or gamma curve and export CSV")
    cp.add_argument("kind", choices=["alpha", "gamma"])
    _opt(cp, "p", _nonneg_int, 0)
    _opt(cp, "q", _nonneg_int, 0)
    _opt(cp, "init", _pos_pair, help="initial data a1,a2 (alpha) or b1,b2 (gamma)")
    _opt(cp, "special", flag=True, help="use the explicit closed gamma of the equality case")
    _opt(cp, "t-max", _pos_float, 5.0)
    _opt(cp, "num", _pos_int, 201)
    _opt(cp, "ode-tol", _pos_float, 1e-10, help="integration tolerance")
    _opt(cp, "escape", _pos_float, 100.0, help="blow-up bound for alpha (monomial growth factor)")
    _opt(cp, "out", str, help="CSV output path")
    _common(cp, tol=1e-8)
    cp.set_defaults(func=cmd_curve)

    # surface
    sp_ = sub.add_parser("surface", help="build a product surface and export an OBJ mesh")
    _opt(sp_, "p", _nonneg_int, 0)
    _opt(sp_, "q", _nonneg_int, 0)
    _opt(sp_, "a", _pos_pair, (1.0, 1.0), help="alpha initial data")
    _opt(sp_, "b", _pos_pair, help="gamma initial data; omit for the explicit gamma over one period")
    _opt(sp_, "t-max", _pos_float, 2.0)
    _opt(sp_, "s-max", _pos_float, 5.0, help="gamma half-interval when --b is given")
    _opt(sp_, "grid", _grid, (50, 50))
    _opt(sp_, "projection", str, "re1-im1-re2", help=f"one of {', '.join(export.PROJECTIONS)}")
    _opt(sp_, "out", str, help="OBJ output path")
    _common(sp_, tol=1e-6)
    sp_.set_defaults(func=cmd_surface)

    # ambient
    ap = sub.add_parser("ambient", help="phase constancy of assembled higher-dimensional immersions")
    ap.add_argument("construction", choices=["theorem1", "propa"])
    _opt(ap, "p", _nonneg_int, 1)
    _opt(ap, "q", _nonneg_int, 0)
    _opt(ap, "a", _pos_pair, (1.0, 2.0))
    _opt(ap, "b", _pos_pair, (0.9, 0.8))
    _opt(ap, "t-max", _pos_float, 0.5)
    _opt(ap, "grid", _grid, (50, 50))
    _opt(ap, "n", _pos_int, 2, help="dimension for propa")
    _opt(ap, "c", _float, 1.0, help="level c >= 0 for propa")
    _opt(ap, "factor", str, "auto", help="auto, sphere, great-circle, torus or fiber (propa)")
    _opt(ap, "samples", _pos_int, 500)
    _opt(ap, "seed", _nonneg_int, 0)
    _common(ap, tol=1e-6)
    ap.set_defaults(func=cmd_ambient)

    # orbit
    op = sub.add_parser("orbit", help="points of the SU(n)-invariant matrix families")
    _opt(op, "variant", str, "gl", help="gl, sym or skew")
    _opt(op, "n", _pos_int, 2)
    _opt(op, "c", _float, 1.0)
    _opt(op, "s-max", _pos_float, 3.0)
    _opt(op, "draws", _pos_int, 100)
    _opt(op, "seed", _nonneg_int, 0)
    _common(op, tol=1e-10)
    op.set_defaults(func=cmd_orbit)

    # pde
    pp = sub.add_parser("pde", help="regularized potential equation on a rectangle")
    pp.add_argument("action", choices=["solve"])
    _opt(pp, "p", _nonneg_int, 0)
    _opt(pp, "q", _nonneg_int, 0)
    _opt(pp, "a1", _float, 1.0)
    _opt(pp, "a2", _float, 1.0)
    _opt(pp, "boundary", str, "xy", help=f"catalog entry ({', '.join(BOUNDARY_CATALOG)}) or a text file "
                                          "holding the full grid of values (edges are used)")
    _opt(pp, "x-range", _pair, (0.0, 1.0))
    _opt(pp, "y-range", _pair, (0.0, 1.0))
    _opt(pp, "grid", _grid, (33, 33))
    _opt(pp, "max-iter", _pos_int, 50)
    _opt(pp, "out", str, help="write the solved potential as a text grid")
    _common(pp, tol=1e-10)
    pp.set_defaults(func=cmd_pde)

    # verify
    vp = sub.add_parser("verify", help="run a verification suite and write a JSON report")
    vp.add_argument("check", choices=sorted(VERIFY))
    _opt(vp, "p", _nonneg_int, 0)
    _opt(vp, "q", _nonneg_int, 0)
    _opt(vp, "a", _pos_pair, (1.0, 1.0))
    _opt(vp, "b", _pos_pair, (0.9, 0.8))
    _opt(vp, "t-max", _pos_float, 2.0)
    _opt(vp, "grid", _grid, (50, 50))
    _opt(vp, "samples", _pos_int, 200)
    _opt(vp, "seed", _nonneg_int, 0)
    _opt(vp, "draws", _pos_int, 100)
    _opt(vp, "n", _pos_int, 2)
    _opt(vp, "c", _float, 1.0)
    _opt(vp, "variant", str, "gl")
    _common(vp, tol=None)
    _opt(vp, "tol", _pos_float, help="override the check's default tolerance")
    vp.set_defaults(func=cmd_verify)
    return top


# -- configuration -----------------------------------------------------------

def _apply_config(args, parser_defaults, types):
    values = {}
    if args.config:
        cfg = configparser.ConfigParser()
        try:
            with open(args.config, encoding="utf-8") as fh:
                cfg.read_file(fh)
        except OSError as exc:
            raise UsageError(f"--config: cannot read {args.config}: {exc.strerror}") from None
        except configparser.Error as exc:
            raise UsageError(f"--config: {exc}") from None
        if not cfg.has_section("slagkit"):
            raise UsageError(f"--config: {args.config} has no [slagkit] section")
        for key, raw in cfg.items("slagkit"):
            dest = key.replace("-", "_")
            if dest not in parser_defaults or dest == "config":
                raise UsageError(f"--config: unknown key {key!r} for command {args.command!r}")
            conv = types[dest]
            try:
                values[dest] = conv(raw) if conv else raw
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"--config: key {key!r}: {exc}") from None
    for dest, default in parser_defaults.items():
        if getattr(args, dest, None) is None:
            setattr(args, dest, values.get(dest, default))
    return args


def _path(args, name):
    if name is None:
        return None
    path = Path(name)
    return path if path.is_absolute() else Path(args.output_dir) / path


def _emit(args, report) -> int:
    text = export.report_text(report)
    if args.report:
        export.write_report(report, _path(args, args.report))
    else:
        sys.stdout.write(text)
    return 0 if report["passed"] else 1


def _require(cond, message):
    if not cond:
        raise UsageError(message)


# -- commands ----------------------------------------------------------------

def cmd_curve(args) -> int:
    if args.special:
        _require(args.kind == "gamma", "--special applies to gamma curves only")
        _require(args.init is None, "--special and --init are mutually exclusive")
        ts = np.linspace(-args.t_max, args.t_max, args.num)
        sample = surfaces.special_gamma_sample(args.p, args.q, ts)
    else:
        _require(args.init is not None, "--init a1,a2 is required (positive reals) unless --special is given")
        params = curves.CurveParams(args.p, args.q, args.init, args.kind)
        if args.kind == "alpha":
            sample = curves.integrate_alpha(params, args.t_max, tol=args.ode_tol, num=args.num,
                                            escape=args.escape)
        else:
            sample = curves.integrate_gamma(params, args.t_max, tol=args.ode_tol, num=args.num)
    if args.out:
        export.export_csv(sample, _path(args, args.out))
    drift = max(sample.max_drift)
    report = export.make_report(
        f"curve-{args.kind}", {"p": args.p, "q": args.q, "init": sample.params.init, "t_max": args.t_max,
                               "special": args.special},
        args.tol, drift,
        {"t_reached": min(sample.t_reached, args.t_max), "truncated": sample.truncated,
         "max_drift_conserved": sample.max_drift[0], "max_drift_line": sample.max_drift[1]})
    return _emit(args, report)


def _build_surface(args):
    nt, ns = args.grid
    if args.b is None:
        return surfaces.sigma_surface(args.p, args.q, args.a, args.t_max, (nt, ns))
    alpha = curves.integrate_alpha(curves.CurveParams(args.p, args.q, args.a, "alpha"), args.t_max, num=nt)
    gamma = curves.integrate_gamma(curves.CurveParams(args.p, args.q, args.b, "gamma"), args.s_max, num=ns)
    return surfaces.product_surface(alpha, gamma)


def cmd_surface(args) -> int:
    _require(args.projection in export.PROJECTIONS,
             f"--projection must be one of {', '.join(export.PROJECTIONS)}, got {args.projection!r}")
    surf = _build_surface(args)
    if args.out:
        export.export_obj(surf, _path(args, args.out), args.projection)
    rep = surfaces.angle_condition(surf)
    report = export.make_report(
        "surface-angle", {"p": args.p, "q": args.q, "a": args.a, "b": args.b, "grid": surf.shape},
        args.tol, rep.max_abs_condition,
        {"max_symplectic": rep.max_abs_symplectic, "spread": rep.spread})
    return _emit(args, report)


FACTORS = {
    "sphere": legendrian.geodesic_sphere,
    "great-circle": lambda k: legendrian.great_circle(),
    "torus": lambda k: legendrian.legendrian_torus(k + 1),
    "fiber": lambda k: legendrian.fiber_circle(),
}


def _factor(name, dim):
    _require(name in FACTORS or name == "auto",
             f"--factor must be auto or one of {', '.join(FACTORS)}, got {name!r}")
    if name == "auto":
        return legendrian.geodesic_sphere(dim)
    psi = FACTORS[name](dim)
    _require(psi.domain_dim == dim, f"--factor {name} has dimension {psi.domain_dim}, needed {dim}")
    return psi


def _ambient_report(args):
    params = {"construction": args.construction, "samples": args.samples, "seed": args.seed}
    try:
        if args.construction == "theorem1":
            _require(min(args.grid) >= 2, "--grid needs at least 2x2")
            nt, ns = args.grid
            alpha = curves.integrate_alpha(curves.CurveParams(args.p, args.q, args.a, "alpha"), args.t_max, num=nt)
            gamma = curves.integrate_gamma(curves.CurveParams(args.p, args.q, args.b, "gamma"), 3.0, num=ns)
            surf = surfaces.product_surface(alpha, gamma)
            psi, phi = _factor(args.factor, args.p), _factor(args.factor, args.q)
            samples = ambient.theorem1_samples(surf, psi, phi, args.samples, args.seed)
            phases = [ambient.assemble_theorem1(surf, psi, phi, *s).phase for s in samples]
            ident = max(ambient.phase_identity_check(surf, psi, phi, s) for s in samples)
            params.update(p=args.p, q=args.q, a=args.a, b=args.b, factor=args.factor)
        else:
            _require(args.c >= 0, f"--c must be nonnegative, got {args.c}")
            name = "great-circle" if args.factor == "auto" and args.n == 2 else (
                "torus" if args.factor == "auto" else args.factor)
            psi = _factor(name, args.n - 1)
            phases = ambient.prop_a_phases(args.n, args.c, psi, count=args.samples, seed=args.seed)
            ident = None
            params.update(n=args.n, c=args.c, factor=name)
    except (NotLegendrianError, DegenerateError) as exc:
        return export.make_report(f"ambient-{args.construction}", params, args.tol, None,
                                  {"rejected": type(exc).__name__, "message": str(exc)}, passed=False)
    spread = ambient.phase_spread(phases)
    details = {"phase_spread": spread, "mean_angle": float(np.angle(np.mean(phases)))}
    passed = spread < args.tol
    if ident is not None:
        details.update(identity_residual=ident, identity_tolerance=1e-8)
        passed = passed and ident < 1e-8
    return export.make_report(f"ambient-{args.construction}", params, args.tol, spread, details, passed)


def cmd_ambient(args) -> int:
    return _emit(args, _ambient_report(args))


def _orbit_kind(args):
    try:
        return matrix_orbits.OrbitKind(matrix_orbits.Variant(args.variant.lower()), args.n)
    except ValueError as exc:
        raise UsageError(f"--variant/--n: {exc}") from None


def _orbit_report(args, s_max=3.0):
    kind = _orbit_kind(args)
    _require(args.c >= 0, f"--c must be nonnegative, got {args.c}")
    rng = np.random.default_rng(args.seed)
    worst_unit = worst_level = worst_sym = 0.0
    target = matrix_orbits.expected_level(kind, args.c)
    for k in range(args.draws):
        s = float(rng.uniform(-s_max, s_max))
        if args.c == 0 and s == 0:
            continue
        A = matrix_orbits.su_sample(kind.size, int(rng.integers(2**63 - 1)))
        pt = matrix_orbits.orbit_point(kind, args.c, s, A)
        unit, lev = matrix_orbits.orbit_residual(pt, target, natural=True)
        worst_unit, worst_level = max(worst_unit, unit), max(worst_level, lev)
        B = pt.matrix
        if kind.variant is matrix_orbits.Variant.SYM:
            worst_sym = max(worst_sym, float(np.linalg.norm(B - B.T)))
        elif kind.variant is matrix_orbits.Variant.SKEW:
            worst_sym = max(worst_sym, float(np.linalg.norm(B + B.T)))
    worst = max(worst_unit, worst_level, worst_sym)
    return export.make_report(
        "orbit", {"variant": kind.variant.value, "n": kind.n, "c": args.c, "draws": args.draws, "seed": args.seed},
        args.tol, worst,
        {"curve_exponent": kind.curve_exponent, "expected_level": target, "max_residual_unitary": worst_unit,
         "max_level_error": worst_level, "max_symmetry_defect": worst_sym})


def cmd_orbit(args) -> int:
    return _emit(args, _orbit_report(args, args.s_max))


BOUNDARY_CATALOG = {
    "xy": lambda x, y: x * y,
    "bilinear": lambda x, y: x * y + 2 * x - y,
    "harmonic3": lambda x, y: x**3 - 3 * x * y**2,
    "harmonic4": lambda x, y: x**4 - 6 * x**2 * y**2 + y**4,
    "quadratic": lambda x, y: x**2 - y**2,
}


def _boundary(args):
    if args.boundary in BOUNDARY_CATALOG:
        return BOUNDARY_CATALOG[args.boundary]
    path = Path(args.boundary)
    _require(path.is_file(), f"--boundary must be one of {', '.join(BOUNDARY_CATALOG)} or an existing file, "
                             f"got {args.boundary!r}")
    try:
        return np.loadtxt(path, ndmin=2)
    except ValueError as exc:
        raise UsageError(f"--boundary: cannot parse {path}: {exc}") from None


def _pde_report(args):
    _require(args.a1 > 0 and args.a2 > 0,
             f"--a1 and --a2 must be strictly positive (ellipticity regularization), got a1={args.a1}, a2={args.a2}")
    _require(args.x_range[1] > args.x_range[0] and args.y_range[1] > args.y_range[0],
             "--x-range and --y-range must be increasing intervals lo,hi")
    _require(min(args.grid) >= 3, "--grid needs at least 3x3 points")
    bnd = _boundary(args)
    params = {"p": args.p, "q": args.q, "a1": args.a1, "a2": args.a2, "boundary": args.boundary,
              "x_range": args.x_range, "y_range": args.y_range, "grid": args.grid}
    try:
        grid = pde.solve_dirichlet(args.p, args.q, args.a1, args.a2, bnd, args.x_range, args.y_range,
                                   args.grid, tol=args.tol, max_iter=args.max_iter)
    except pde.ConvergenceError as exc:
        return None, export.make_report("pde-solve", params, args.tol, exc.log[-1]["residual_max"] if exc.log else None,
                                        {"error": str(exc), "log": exc.log}, passed=False)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r1, r2 = pde.cr_residual(pde.reconstruct_graph(grid), args.p, args.q, args.a1, args.a2)
    res = float(np.max(np.abs(pde.potential_residual(grid))))
    details = {"iterations": len(grid.log) - 1, "monotone": pde.log_is_monotone(grid), "log": list(grid.log),
               "cr_residual_max": [float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))]}
    return grid, export.make_report("pde-solve", params, args.tol, res, details,
                                    res < args.tol and details["monotone"])


def cmd_pde(args) -> int:
    grid, report = _pde_report(args)
    if grid is not None and args.out:
        lines = [" ".join(f"{v:.17g}" for v in row) for row in grid.h]
        export.atomic_write(_path(args, args.out), "\n".join(lines) + "\n")
    return _emit(args, report)


# -- verify ------------------------------------------------------------------

def _verify_corollary2(args):
    tol = args.tol or 1e-8
    surf = surfaces.sigma_surface(args.p, args.q, args.a, args.t_max, args.grid)
    r1, r2 = surfaces.sigma_a_membership(surf.points, args.p, args.q, args.a)
    m1, m2 = float(np.max(np.abs(r1))), float(np.max(np.abs(r2)))
    return export.make_report("corollary2", {"p": args.p, "q": args.q, "a": args.a, "grid": args.grid,
                                             "t_max": args.t_max}, tol, max(m1, m2),
                              {"max_residual_quadric": m1, "max_residual_level": m2,
                               "t_reached": float(surf.ts[-1])})


def _verify_angle(args):
    tol = args.tol or 1e-6
    nt, ns = args.grid
    alpha = curves.integrate_alpha(curves.CurveParams(args.p, args.q, args.a, "alpha"), args.t_max, num=nt)
    gamma = curves.integrate_gamma(curves.CurveParams(args.p, args.q, args.b, "gamma"), 3.0, num=ns)
    rep = surfaces.angle_condition(surfaces.product_surface(alpha, gamma))
    passed = rep.max_abs_condition < tol and rep.max_abs_symplectic < 1e-8
    return export.make_report("angle", {"p": args.p, "q": args.q, "a": args.a, "b": args.b, "grid": args.grid},
                              tol, rep.max_abs_condition,
                              {"max_symplectic": rep.max_abs_symplectic, "symplectic_tolerance": 1e-8}, passed)


def _verify_curvature(args):
    tol = args.tol or 0.05
    nt, ns = args.grid
    surf = surfaces.sigma_surface(0, 0, (1.0, 1.0), args.t_max, (nt, ns), escape=None)
    rep = surfaces.total_curvature_report(surf)
    target = -4 * math.pi
    rel = abs(rep.estimate - target) / abs(target)
    ratio_ok = rep.convergence_ratio is not None and 3.5 <= rep.convergence_ratio <= 4.5
    return export.make_report("curvature", {"t_max": args.t_max, "grid": args.grid}, tol, rel,
                              {"estimate": rep.estimate, "target": target, "extrapolated": rep.extrapolated,
                               "convergence_ratio": rep.convergence_ratio, "ratio_band": [3.5, 4.5]},
                              rel < tol and ratio_ok)


def _verify_ambient(args):
    args.construction = "theorem1"
    args.factor = "auto"
    args.tol = args.tol or 1e-6
    return _ambient_report(args)


def _verify_propa(args):
    args.construction = "propa"
    args.factor = "auto"
    args.tol = args.tol or 1e-6
    return _ambient_report(args)


def _verify_orbit(args):
    args.tol = args.tol or 1e-10
    return _orbit_report(args)


def _verify_period(args):
    tol = args.tol or 1e-8
    rep = curves.gamma_closedness(args.p, args.q, args.b, cross_check=True)
    diff = None if rep.period_check is None else abs(rep.period - rep.period_check)
    return export.make_report(
        "period", {"p": args.p, "q": args.q, "b": args.b}, tol, diff,
        {"period": rep.period, "period_ode": rep.period_check, "critical_radii": rep.critical_radii,
         "winding_integrals": rep.winding_integrals, "verdict": rep.verdict,
         "closed": None if rep.closed is None else [str(f) for f in rep.closed],
         "fundamental_period": rep.fundamental_period, "equality_case": rep.degenerate},
        passed=diff is None or diff < tol)


VERIFY = {
    "corollary2": _verify_corollary2,
    "angle": _verify_angle,
    "curvature": _verify_curvature,
    "ambient": _verify_ambient,
    "propa": _verify_propa,
    "orbit": _verify_orbit,
    "period": _verify_period,
}


def cmd_verify(args) -> int:
    return _emit(args, VERIFY[args.check](args))


# -- entry points ------------------------------------------------------------

def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, args._defaults, args._types)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 2
    except (ValueError, SlagkitError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2 if isinstance(exc, ValueError) else 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(run())
