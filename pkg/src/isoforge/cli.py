"""Command-line front end: config-driven pipelines and machine-readable reports.

Configs are JSON documents with sections lattice / omega / reparam / grid /
outputs / tolerances; unknown keys anywhere are rejected.  Meshes are written
as OBJ, curves as CSV (optionally SVG polylines), reports as JSON.  Exit
codes: 0 ok, 1 usage or config error, 2 mathematical precondition failure,
3 verification failure (outputs are still written).
"""

from __future__ import annotations

import hashlib
import json
import os
import platform
import sys
from concurrent.futures import ThreadPoolExecutor

import click
import numpy as np

from . import __version__, curvefamily, elliptic, frame, reparam, spherical
from . import surface as surface_mod
from . import theta
from .errors import IsoforgeError, NoCriticalOmega


# ---------------------------------------------------------------------------
# config handling


class ConfigError(click.ClickException):
    """Schema violation in a run config (exit code 1)."""


_NUM = (int, float)
_SCHEMA = {
    "lattice": {"kind": str, "lambda": _NUM},
    "omega": {"mode": str, "value": _NUM},
    "reparam": {"kind": str, "mean": _NUM, "amplitude": _NUM, "period": _NUM,
                "level": _NUM, "delta": _NUM, "s1": (list, *_NUM),
                "s2": (list, *_NUM)},
    "grid": {"nu": int, "nv": int, "periods": int},
    "outputs": {"mesh": str, "curves": str, "report": str, "svg": str},
    "tolerances": {},  # free-form name -> float
}
_REQUIRED = ("lattice", "omega", "reparam")


def validate_config(cfg: dict) -> dict:
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    for key in cfg:
        if key not in _SCHEMA:
            raise ConfigError(f"unknown config section {key!r}")
    for key in _REQUIRED:
        if key not in cfg:
            raise ConfigError(f"missing config section {key!r}")
    for section, fields in _SCHEMA.items():
        sub = cfg.get(section)
        if sub is None:
            continue
        if not isinstance(sub, dict):
            raise ConfigError(f"section {section!r} must be an object")
        for k, val in sub.items():
            if section == "tolerances":
                if not isinstance(val, _NUM):
                    raise ConfigError(f"tolerances.{k} must be a number")
                continue
            if k not in fields:
                raise ConfigError(f"unknown key {section}.{k}")
            if not isinstance(val, fields[k]):
                raise ConfigError(f"bad type for {section}.{k}")
    mode = cfg["omega"].get("mode")
    if mode not in ("critical", "explicit", "limit"):
        raise ConfigError("omega.mode must be critical, explicit or limit")
    if mode == "explicit" and "value" not in cfg["omega"]:
        raise ConfigError("omega.mode=explicit requires omega.value")
    kind = cfg["lattice"].get("kind")
    if kind not in ("rhombic", "rectangular"):
        raise ConfigError("lattice.kind must be rhombic or rectangular")
    if cfg["reparam"].get("kind") not in ("analytic", "constant", "spherical"):
        raise ConfigError("reparam.kind must be analytic, constant or spherical")
    return cfg


def load_config(path: str) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    return validate_config(cfg)


def config_hash(cfg: dict) -> str:
    blob = json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def max_threads() -> int:
    """Parallelism cap from ISOFORGE_THREADS (default: cpu count)."""
    env = os.environ.get("ISOFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ConfigError("ISOFORGE_THREADS must be an integer")
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# pipeline pieces


def _lattice(cfg):
    lam = float(cfg["lattice"]["lambda"])
    if cfg["lattice"]["kind"] == "rhombic":
        return theta.rhombic(lam)
    return theta.rectangular(lam)


def _family(cfg):
    """(lattice, family-params or None, limit?) from the omega section."""
    lat = _lattice(cfg)
    mode = cfg["omega"]["mode"]
    if mode == "limit":
        return lat, None, True
    if mode == "critical":
        return lat, elliptic.solve_critical_omega(lat), False
    om = float(cfg["omega"]["value"])
    fam = curvefamily.FamilyParams(lattice=lat, omega=om)
    return lat, fam, False


def _complex_param(val):
    if isinstance(val, list):
        if len(val) != 2:
            raise ConfigError("complex parameters are [re, im] pairs")
        return complex(float(val[0]), float(val[1]))
    return complex(float(val), 0.0)


def _reparam_spec(cfg, lat, fam):
    sec = cfg["reparam"]
    kind = sec["kind"]
    if kind == "constant":
        return reparam.constant(float(sec.get("level", np.pi * lat.lam)),
                                float(sec.get("period", 2 * np.pi)))
    if kind == "analytic":
        for key in ("mean", "amplitude", "period"):
            if key not in sec:
                raise ConfigError(f"reparam.{key} required for analytic")
        return reparam.analytic(float(sec["mean"]), float(sec["amplitude"]),
                                float(sec["period"]))
    for key in ("delta", "s1", "s2"):
        if key not in sec:
            raise ConfigError(f"reparam.{key} required for spherical")
    if fam is None or not hasattr(fam, "residual"):
        raise ConfigError("spherical reparam requires omega.mode=critical")
    sph = reparam.SphericalSpec(delta=float(sec["delta"]),
                                s1=_complex_param(sec["s1"]),
                                s2=_complex_param(sec["s2"]))
    return reparam.build_spherical(sph, fam)


def _recipe(cfg, fam_or_lat, spec, limit):
    grid = cfg.get("grid", {})
    return surface_mod.SurfaceRecipe(
        fam=fam_or_lat, spec=spec,
        nu=int(grid.get("nu", 128)), nv=int(grid.get("nv", 128)),
        periods=int(grid.get("periods", 1)), limit=limit)


# ---------------------------------------------------------------------------
# writers


def write_obj(path, surf):
    """Quad mesh over the (u, v) grid; u is cyclic, v is an open strip."""
    pts = np.asarray(surf.points)
    nu, nv = pts.shape[:2]
    with open(path, "w") as fh:
        fh.write(f"# isoforge {__version__} surface mesh {nu}x{nv}\n")
        for i in range(nu):
            for j in range(nv):
                x, y, z = pts[i, j]
                fh.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")

        def vid(i, j):
            return (i % nu) * nv + j + 1

        for i in range(nu):
            for j in range(nv - 1):
                fh.write(f"f {vid(i, j)} {vid(i + 1, j)} "
                         f"{vid(i + 1, j + 1)} {vid(i, j + 1)}\n")
    return nu * nv, nu * (nv - 1)


def write_curve_csv(path, us, gam, eh, tangent, kappa):
    import csv

    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh)
        wr.writerow(["u", "re_gamma", "im_gamma", "exp_h",
                     "tangent_re", "tangent_im", "kappa_hyp"])
        for k in range(len(us)):
            wr.writerow([f"{us[k]:.12g}", f"{gam[k].real:.12g}",
                         f"{gam[k].imag:.12g}", f"{eh[k]:.12g}",
                         f"{tangent[k].real:.12g}", f"{tangent[k].imag:.12g}",
                         f"{kappa[k]:.12g}"])


def write_svg(path, curves, size=640):
    """Polyline quick-look of complex curves (list of arrays)."""
    allpts = np.concatenate(curves)
    lo = complex(np.min(allpts.real), np.min(allpts.imag))
    hi = complex(np.max(allpts.real), np.max(allpts.imag))
    span = max(hi.real - lo.real, hi.imag - lo.imag, 1e-12)
    pad = 0.05 * span

    def sx(z):
        return (z.real - lo.real + pad) / (span + 2 * pad) * size

    def sy(z):
        return size - (z.imag - lo.imag + pad) / (span + 2 * pad) * size

    with open(path, "w") as fh:
        fh.write(f'<svg xmlns="http://www.w3.org/2000/svg" '
                 f'width="{size}" height="{size}">\n')
        for curve in curves:
            pts = " ".join(f"{sx(z):.2f},{sy(z):.2f}" for z in curve)
            fh.write(f'<polyline points="{pts}" fill="none" '
                     f'stroke="black" stroke-width="1"/>\n')
        fh.write("</svg>\n")


def make_report(cfg, checks, extra=None):
    report = {
        "config": cfg,
        "config_hash": config_hash(cfg),
        "environment": {
            "isoforge": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "platform": platform.platform(),
        },
        "checks": checks,
        "passed": all(c["pass"] for c in checks),
    }
    if extra:
        report.update(extra)
    return report


def emit_report(report, path=None):
    text = json.dumps(report, indent=2, default=float)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        click.echo(text)


def check(name, value, tol):
    return {"name": name, "value": float(value), "tolerance": float(tol),
            "pass": bool(abs(value) < tol)}


# ---------------------------------------------------------------------------
# verification battery


def run_battery(surf, fam, cfg):
    """All surface-level certificates as a flat check list."""
    tols = cfg.get("tolerances", {})

    def tol(name, default):
        return float(tols.get(name, default))

    checks = []
    d = surf.diagnostics
    spec = surf.recipe.spec
    is_limit = surf.recipe.limit
    names = (("orthogonality", "conformality") if is_limit else
             ("orthogonality", "conformality_u", "conformality_v",
              "normal_unit", "normal_tangency"))
    for name in names:
        checks.append(check(name, d[name], tol(name, 1e-10)))

    lat = fam if is_limit else fam.lattice

    # u-closure of gamma (closed only at critical omega on rhombic lattices)
    ws = np.asarray(spec.w(np.linspace(0.0, spec.period, 9)), dtype=float)
    closure = 0.0
    for w in ws:
        if is_limit:
            g0 = curvefamily.gamma_hat(np.array([0.0, 2 * np.pi]), float(w), lat)
        else:
            g0 = curvefamily.gamma(np.array([0.0, 2 * np.pi]), float(w), fam)
        closure = max(closure, float(np.abs(g0[1] - g0[0])))
    checks.append(check("u_closure", closure, tol("u_closure", 1e-9)))

    if not is_limit:
        # metric identity e^h = 2 Re(W1 conj gamma)
        metric = 0.0
        for w in ws:
            us = np.linspace(0.0, 2 * np.pi, 64, endpoint=False)
            eh = curvefamily.exp_h(us, float(w), fam)
            gam = curvefamily.gamma(us, float(w), fam)
            w1 = curvefamily.w1(float(w), fam)
            metric = max(metric, float(np.max(
                np.abs(eh - 2 * np.real(w1 * np.conj(gam))) / eh)))
        checks.append(check("metric_identity", metric,
                            tol("metric_identity", 1e-9)))

        # PDE identities: require second-order convergence of the FD
        # residuals plus a residual cap.  Quadrature-built spherical w(v)
        # has much larger v-derivatives than the analytic profiles, so its
        # truncation constant (and hence the cap) is larger.
        res = surface_mod.gauss_codazzi_residuals(surf)
        coarse = surface_mod.gauss_codazzi_residuals(surf, du=8e-4, dv=8e-4)
        pde_cap = 1e-2 if spec.kind == "spherical" else 1e-5
        for name, val in res.items():
            checks.append(check(f"pde_{name}", val, tol(f"pde_{name}", pde_cap)))
        orders = [np.log2(coarse[k] / res[k]) for k in res
                  if res[k] > 1e-12]
        deficit = max(0.0, 1.9 - min(orders)) if orders else 0.0
        checks.append(check("pde_order_deficit", deficit,
                            tol("pde_order_deficit", 0.05)))

        # closed-form fv against a finite difference of the immersion
        checks.append(check("fv_vs_fd", _fv_fd_residual(surf, fam),
                            tol("fv_vs_fd", 1e-6)))

        # admissibility + branch smoothness of the signed root: a wrong
        # branch (e.g. |.| of a sign-changing root) kinks, so its second
        # divided differences keep growing under mesh refinement
        rep_c = reparam.validate(spec, lat, n=2001)
        rep_f = reparam.validate(spec, lat, n=4001)
        checks.append(check("reparam_admissible", 0.0 if rep_f.ok else 1.0,
                            0.5))
        checks.append(check("root_consistency", rep_f.root_residual,
                            tol("root_consistency", 1e-8)))
        # floor the denominator so roundoff-level dd2 (constant w) passes
        growth = rep_f.root_dd2 / max(rep_c.root_dd2, 1.0)
        checks.append(check("root_branch_smoothness", growth,
                            tol("root_branch_smoothness", 1.5)))

        if hasattr(fam, "residual"):  # critical omega: symmetry involutions
            inv = surface_mod.inversion_symmetry(surf, fam)
            for name, val in inv.residuals.items():
                checks.append(check(f"inversion_{name}", val,
                                    tol(f"inversion_{name}", 1e-8)))
            dual = surface_mod.dual_symmetry(surf)
            for name, val in dual.residuals.items():
                dtol = 1e-7 if name in ("double_dual", "loop_integral") else 1e-8
                checks.append(check(f"dual_{name}", val,
                                    tol(f"dual_{name}", dtol)))

    plan = surface_mod.planarity_certificate(surf)
    checks.append(check("planarity", plan.max_deviation_rel,
                        tol("planarity", 1e-8)))
    checks.append(check("joachimsthal", plan.angle_std_max,
                        tol("joachimsthal", 1e-8)))
    # generic surfaces have plane normals spanning 3-space; the limit
    # surface's planes are all tangent to one cylinder (rank 2)
    want_rank = 2 if is_limit else 3
    checks.append(check("normals_rank_defect", plan.normal_rank - want_rank,
                        0.5))

    if spec.kind == "spherical" and not is_limit:
        cert = reparam.sphericality_certificate(surf)
        checks.append(check("sphere_fit", cert.sphere_residual_rel,
                            tol("sphere_fit", 1e-6)))
        checks.append(check("sphere_angle", cert.angle_std_max,
                            tol("sphere_angle", 1e-6)))
    return checks


def _fv_fd_residual(surf, fam, dv=1e-4):
    """Max |fv - d(points)/dv| at a few probes (catches sign errors)."""
    spec = surf.recipe.spec
    worst = 0.0
    for v0 in np.linspace(0.31, 0.77, 3) * spec.period:
        nodes = np.array([0.0, v0 - dv, v0, v0 + dv])
        traj = frame.integrate(spec, fam, v_nodes=nodes,
                               step_tol=surf.recipe.step_tol)
        us = surf.u[:: max(1, len(surf.u) // 8)]
        f = surface_mod.fields_at(fam, spec, us, nodes[1:], traj.phi[1:])
        fd = (f["points"][:, 2] - f["points"][:, 0]) / (2 * dv)
        worst = max(worst, float(np.max(np.abs(fd - f["fv"][:, 1]))))
    return worst


# ---------------------------------------------------------------------------
# commands


@click.group()
def cli():
    """Isothermic surfaces with planar curvature lines: synthesis + checks."""


@cli.command()
@click.option("--lambda0", "want_lambda0", is_flag=True,
              help="print the threshold lattice parameter")
@click.option("--lambda", "lam", type=float, default=None,
              help="rhombic lattice parameter")
def solve(want_lambda0, lam):
    """Critical rotation parameter (or the lambda threshold)."""
    if want_lambda0:
        click.echo(f"lambda0 = {elliptic.solve_lambda0():.12f}")
        return
    if lam is None:
        raise click.UsageError("pass --lambda or --lambda0")
    try:
        crit = elliptic.solve_critical_omega(theta.rhombic(lam))
    except NoCriticalOmega:
        raise IsoforgeError(
            f"no critical omega: lambda = {lam} >= lambda0 "
            f"= {elliptic.solve_lambda0():.12f}")
    click.echo(f"omega = {crit.omega:.15f}")
    click.echo(f"residual = {crit.residual:.3e}")


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--w", "w_values", type=float, multiple=True,
              help="band coordinates of the curves (repeatable)")
@click.option("--n", "n_samples", type=int, default=512, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".")
@click.option("--svg", is_flag=True, help="also write an SVG quick-look")
def curves(config, w_values, n_samples, out_dir, svg):
    """Planar curvature-line curves with elastica data, one CSV per w."""
    cfg = load_config(config)
    lat, fam, limit = _family(cfg)
    if limit:
        raise ConfigError("curves requires omega.mode critical or explicit")
    if not w_values:
        top = 2 * np.pi * lat.lam
        w_values = tuple(top * k / 6 for k in (1, 2, 3, 4, 5))
    os.makedirs(out_dir, exist_ok=True)
    us = np.linspace(0.0, 2 * np.pi, n_samples + 1)

    def one(w):
        gam = curvefamily.gamma(us, w, fam)
        eh = curvefamily.exp_h(us, w, fam)
        tangent = curvefamily.exp_isigma(us, w, fam)
        kappa = curvefamily.kappa_hyp(us, w, fam)
        return gam, eh, tangent, kappa

    with ThreadPoolExecutor(max_workers=max_threads()) as pool:
        results = list(pool.map(one, w_values))

    polylines = []
    for w, (gam, eh, tangent, kappa) in zip(w_values, results):
        name = os.path.join(out_dir, f"curve_w{w:.4f}.csv")
        write_curve_csv(name, us, gam, eh, tangent, kappa)
        defect = abs(gam[-1] - gam[0])
        click.echo(f"w = {w:.6f}: closure defect {defect:.3e} -> {name}")
        polylines.append(gam)
    if svg:
        svg_path = os.path.join(out_dir, "curves.svg")
        write_svg(svg_path, polylines)
        click.echo(f"svg -> {svg_path}")


@cli.command("surface")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=".")
@click.option("--tol", type=float, default=None,
              help="override every check tolerance")
def surface_cmd(config, out_dir, tol):
    """Build the immersion mesh (OBJ) and its verification report."""
    cfg = load_config(config)
    if tol is not None:
        cfg = {**cfg, "tolerances": {}}  # a flat override wins
    lat, fam, limit = _family(cfg)
    spec = _reparam_spec(cfg, lat, fam)
    surf = surface_mod.build(_recipe(cfg, lat if limit else fam, spec, limit))

    os.makedirs(out_dir, exist_ok=True)
    outputs = cfg.get("outputs", {})
    mesh_path = os.path.join(out_dir, outputs.get("mesh", "surface.obj"))
    nverts, nfaces = write_obj(mesh_path, surf)
    click.echo(f"mesh -> {mesh_path} ({nverts} vertices, {nfaces} quads)")

    checks = run_battery(surf, lat if limit else fam, cfg)
    if tol is not None:
        checks = [check(c["name"], c["value"], tol) for c in checks]
    if not limit and spec.kind != "constant":
        try:
            mono = frame.monodromy(frame.integrate(spec, fam))
            extra = {"axis": list(mono.axis.array()), "theta": mono.theta}
        except IsoforgeError:
            extra = {"axis": None, "theta": 0.0}
    else:
        extra = None
    report = make_report(cfg, checks, extra)
    report_path = os.path.join(out_dir, outputs.get("report", "report.json"))
    emit_report(report, report_path)
    click.echo(f"report -> {report_path} "
               f"({'pass' if report['passed'] else 'FAIL'})")
    if not report["passed"]:
        sys.exit(3)


@cli.command()
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="write the JSON report here instead of stdout")
@click.option("--tol", type=float, default=None,
              help="override every check tolerance")
def verify(config, out, tol):
    """Run the full invariant battery and emit a JSON report."""
    cfg = load_config(config)
    lat, fam, limit = _family(cfg)
    spec = _reparam_spec(cfg, lat, fam)
    surf = surface_mod.build(_recipe(cfg, lat if limit else fam, spec, limit))
    checks = run_battery(surf, lat if limit else fam, cfg)
    if tol is not None:
        checks = [check(c["name"], c["value"], tol) for c in checks]
    report = make_report(cfg, checks)
    emit_report(report, out)
    if not report["passed"]:
        sys.exit(3)


@cli.command("spherical")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def spherical_cmd(config, out):
    """Spherical-second-family certificates, axis and monodromy angle."""
    cfg = load_config(config)
    if cfg["reparam"].get("kind") != "spherical":
        raise ConfigError("spherical command requires reparam.kind=spherical")
    lat, crit, limit = _family(cfg)
    if limit or not hasattr(crit, "residual"):
        raise ConfigError("spherical command requires omega.mode=critical")
    spec = _reparam_spec(cfg, lat, crit)
    surf = surface_mod.build(_recipe(cfg, crit, spec, False))

    tols = cfg.get("tolerances", {})
    cert = reparam.sphericality_certificate(surf)
    samples = spherical.sphere_centers(surf, crit)
    ratio, _, _ = spherical.collinearity(samples)
    _, plane_dist = spherical.cone_point(surf, samples)
    ax = spherical.axis(spec, crit, surf)
    mono = frame.monodromy(frame.integrate(spec, crit))
    axdir = ax.Zprime_omega / np.linalg.norm(ax.Zprime_omega)
    angle = float(np.arccos(np.clip(
        abs(float(axdir @ mono.axis.array())), -1.0, 1.0)))
    rel_norm = abs(ax.norm_sq_assembled - ax.norm_sq) / ax.norm_sq

    checks = [
        check("sphere_fit", cert.sphere_residual_rel,
              float(tols.get("sphere_fit", 1e-6))),
        check("collinearity", ratio, float(tols.get("collinearity", 1e-6))),
        check("cone_point_planes", plane_dist,
              float(tols.get("cone_point_planes", 1e-7))),
        check("axis_unit", ax.unit_residual,
              float(tols.get("axis_unit", 1e-9))),
        check("axis_norm_sq", rel_norm, float(tols.get("axis_norm_sq", 1e-8))),
        check("axis_vs_monodromy", angle,
              float(tols.get("axis_vs_monodromy", 1e-6))),
    ]
    report = make_report(cfg, checks, {
        "theta": mono.theta,
        "axis": list(mono.axis.array()),
        "period_V": spec.period,
    })
    emit_report(report, out)
    click.echo(f"theta = {mono.theta:.12f}", err=True)
    if not report["passed"]:
        sys.exit(3)


@cli.command("close-torus")
@click.argument("config", type=click.Path(exists=True, dir_okay=False))
@click.option("--target", type=float, default=2 * np.pi / 3, show_default=True,
              help="target monodromy angle")
@click.option("--k", type=int, default=3, show_default=True,
              help="periods of the closed torus")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None,
              help="also write the closed-torus OBJ here")
def close_torus_cmd(config, target, k, out_dir):
    """Tune the analytic amplitude so the piece closes after k periods."""
    cfg = load_config(config)
    sec = cfg["reparam"]
    if sec.get("kind") != "analytic":
        raise ConfigError("close-torus requires reparam.kind=analytic")
    lat, fam, limit = _family(cfg)
    if limit:
        raise ConfigError("close-torus requires a non-limit family")
    mean, period = float(sec["mean"]), float(sec["period"])

    def template(amp):
        return reparam.analytic(mean, amp, period)

    spec, achieved = frame.close_torus(template, fam, target)
    amp = spec.meta["amplitude"]
    click.echo(f"amplitude = {amp:.15f}")
    click.echo(f"theta = {achieved:.15f} (|theta - target| "
               f"= {abs(achieved - target):.3e})")
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        grid = cfg.get("grid", {})
        recipe = surface_mod.SurfaceRecipe(
            fam=fam, spec=spec, nu=int(grid.get("nu", 96)),
            nv=int(grid.get("nv", 96)), periods=1)
        piece = surface_mod.build(recipe)
        mono = frame.monodromy(frame.integrate(spec, fam))
        torus = frame.extend_by_rotation(piece, mono, k)
        path = os.path.join(out_dir, "torus.obj")
        write_obj(path, torus)
        click.echo(f"mesh -> {path}")


def main():
    try:
        cli.main(standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        sys.exit(1)
    except click.Abort:
        sys.exit(1)
    except IsoforgeError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
