"""Config validation, the command-line pipelines and their exit codes."""

import csv
import dataclasses
import json
import subprocess

import numpy as np
import pytest
from click.testing import CliRunner

from isoforge import cli as cli_mod
from isoforge.cli import ConfigError, cli, load_config, validate_config


def _write(tmp_path, cfg, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def _base_cfg(**updates):
    cfg = {
        "lattice": {"kind": "rhombic", "lambda": 0.32},
        "omega": {"mode": "critical"},
        "reparam": {"kind": "analytic", "mean": 1.0053096491487339,
                    "amplitude": 0.35, "period": 6.0},
        "grid": {"nu": 24, "nv": 24},
    }
    cfg.update(updates)
    return cfg


# ---------------------------------------------------------------------------
# config schema


def test_config_rejects_unknown_section():
    with pytest.raises(ConfigError, match="unknown config section"):
        validate_config(_base_cfg(extra={}))


def test_config_rejects_unknown_key():
    cfg = _base_cfg()
    cfg["lattice"]["spin"] = 1
    with pytest.raises(ConfigError, match="unknown key lattice.spin"):
        validate_config(cfg)


def test_config_rejects_missing_section():
    cfg = _base_cfg()
    del cfg["omega"]
    with pytest.raises(ConfigError, match="missing config section"):
        validate_config(cfg)


def test_config_rejects_bad_types_and_enums():
    cfg = _base_cfg()
    cfg["lattice"]["lambda"] = "0.32"
    with pytest.raises(ConfigError, match="bad type"):
        validate_config(cfg)
    cfg = _base_cfg()
    cfg["omega"]["mode"] = "auto"
    with pytest.raises(ConfigError, match="omega.mode"):
        validate_config(cfg)
    cfg = _base_cfg()
    cfg["reparam"]["kind"] = "spline"
    with pytest.raises(ConfigError, match="reparam.kind"):
        validate_config(cfg)


def test_load_config_rejects_bad_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(str(path))


def test_max_threads(monkeypatch):
    monkeypatch.setenv("ISOFORGE_THREADS", "3")
    assert cli_mod.max_threads() == 3
    monkeypatch.setenv("ISOFORGE_THREADS", "many")
    with pytest.raises(ConfigError):
        cli_mod.max_threads()
    monkeypatch.delenv("ISOFORGE_THREADS")
    assert cli_mod.max_threads() >= 1


# ---------------------------------------------------------------------------
# solve


def test_solve_lambda0():
    result = CliRunner().invoke(cli, ["solve", "--lambda0"])
    assert result.exit_code == 0
    assert "0.354729892522" in result.output


def test_solve_critical_omega():
    result = CliRunner().invoke(cli, ["solve", "--lambda", "0.32"])
    assert result.exit_code == 0
    assert "omega = 0.391729121567" in result.output


def test_solve_exit_codes_via_entry_point():
    # above the threshold: mathematical precondition failure -> 2
    proc = subprocess.run(["isoforge", "solve", "--lambda", "0.45"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "no critical omega" in proc.stderr
    # no arguments at all: usage error -> 1
    proc = subprocess.run(["isoforge", "solve"], capture_output=True, text=True)
    assert proc.returncode == 1


# ---------------------------------------------------------------------------
# curves


def test_curves_writes_csv(tmp_path):
    cfg_path = _write(tmp_path, _base_cfg())
    result = CliRunner().invoke(cli, [
        "curves", cfg_path, "--w", "1.0", "--n", "64",
        "--out-dir", str(tmp_path), "--svg"])
    assert result.exit_code == 0, result.output
    csv_path = tmp_path / "curve_w1.0000.csv"
    assert csv_path.exists()
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["u", "re_gamma", "im_gamma", "exp_h",
                       "tangent_re", "tangent_im", "kappa_hyp"]
    assert len(rows) == 66  # header + 65 samples (closed: endpoint repeated)
    first = np.array(rows[1][1:3], dtype=float)
    last = np.array(rows[-1][1:3], dtype=float)
    assert np.max(np.abs(first - last)) < 1e-9
    assert (tmp_path / "curves.svg").exists()


# ---------------------------------------------------------------------------
# surface + verify


def test_surface_writes_obj_and_report(tmp_path):
    cfg_path = _write(tmp_path, _base_cfg())
    result = CliRunner().invoke(cli, [
        "surface", cfg_path, "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output

    verts = []
    faces = []
    for line in (tmp_path / "surface.obj").read_text().splitlines():
        if line.startswith("v "):
            verts.append([float(x) for x in line.split()[1:]])
        elif line.startswith("f "):
            faces.append([int(x) for x in line.split()[1:]])
    # the v-strip keeps its endpoint: nu x (nv + 1) vertices
    assert len(verts) == 24 * 25
    assert len(faces) == 24 * 24
    idx = np.array(faces)
    assert idx.min() >= 1 and idx.max() <= len(verts)

    report = json.loads((tmp_path / "report.json").read_text())
    assert report["passed"]
    assert {c["name"] for c in report["checks"]} >= {
        "u_closure", "metric_identity", "fv_vs_fd", "planarity"}
    assert all(set(c) == {"name", "value", "tolerance", "pass"}
               for c in report["checks"])
    assert report["theta"] > 0


def test_verify_rectangular_fails_closure(tmp_path):
    cfg = _base_cfg()
    cfg["lattice"] = {"kind": "rectangular", "lambda": 0.9}
    cfg["omega"] = {"mode": "explicit", "value": 0.3}
    # keep the w-range clear of the rectangular W1 pole at w = pi * lambda
    cfg["reparam"] = {"kind": "analytic", "mean": 1.4,
                      "amplitude": 0.3, "period": 6.0}
    out = tmp_path / "report.json"
    result = CliRunner().invoke(cli, [
        "verify", _write(tmp_path, cfg), "--out", str(out)])
    assert result.exit_code == 3
    report = json.loads(out.read_text())
    failed = {c["name"] for c in report["checks"] if not c["pass"]}
    assert "u_closure" in failed


def test_verify_limit_surface(tmp_path):
    cfg = {
        "lattice": {"kind": "rhombic", "lambda": 0.354729892522},
        "omega": {"mode": "limit"},
        "reparam": {"kind": "analytic", "mean": 1.114548653,
                    "amplitude": 0.3, "period": 5.0},
        "grid": {"nu": 24, "nv": 24},
    }
    out = tmp_path / "report.json"
    result = CliRunner().invoke(cli, [
        "verify", _write(tmp_path, cfg), "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    names = {c["name"] for c in report["checks"]}
    assert "conformality" in names
    defect = next(c for c in report["checks"]
                  if c["name"] == "normals_rank_defect")
    assert defect["value"] == 0.0  # rank-2 plane-normal family


# ---------------------------------------------------------------------------
# spherical command and the wrong-branch negative control


def test_spherical_command(tmp_path, sph_cfg_grid32):
    out = tmp_path / "report.json"
    result = CliRunner().invoke(cli, [
        "spherical", _write(tmp_path, sph_cfg_grid32), "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text())
    assert report["passed"]
    assert {c["name"] for c in report["checks"]} == {
        "sphere_fit", "collinearity", "cone_point_planes",
        "axis_unit", "axis_norm_sq", "axis_vs_monodromy"}
    assert abs(report["period_V"]) > 0


@pytest.fixture(scope="session")
def sph_cfg_grid32():
    return {
        "lattice": {"kind": "rhombic", "lambda": 0.32},
        "omega": {"mode": "critical"},
        "reparam": {"kind": "spherical", "delta": 0.5,
                    "s1": [0.45, 0.25], "s2": [0.45, -0.25]},
        "grid": {"nu": 32, "nv": 32},
    }


def test_battery_catches_wrong_root_branch(crit032):
    """Taking |.| of a sign-changing square root leaves every local identity
    intact but kinks the branch; the smoothness check must catch it.  (Only
    real-pair specs have a sign-changing root: for a conjugate pair
    (s-s1)(s-s2) = |s-s1|^2 never crosses zero.)"""
    from isoforge import reparam, surface

    spec = reparam.build_spherical(
        reparam.SphericalSpec(delta=0.4, s1=0.5, s2=0.9), crit032)
    recipe = surface.SurfaceRecipe(fam=crit032, spec=spec, nu=32, nv=32)
    good = {c["name"]: c for c in cli_mod.run_battery(
        surface.build(recipe), crit032, {})}
    assert good["root_branch_smoothness"]["pass"]
    assert good["root_consistency"]["pass"]

    orig = spec.signed_root
    bad_spec = dataclasses.replace(
        spec, signed_root=lambda v: np.abs(np.asarray(orig(v))))
    bad = {c["name"]: c for c in cli_mod.run_battery(
        surface.build(dataclasses.replace(recipe, spec=bad_spec)),
        crit032, {})}
    assert not bad["root_branch_smoothness"]["pass"]
    # fv against finite differences alone does NOT discriminate: the
    # immersion is consistent with either branch pointwise
    assert bad["fv_vs_fd"]["pass"]


def test_battery_passes_on_conjugate_pair_spherical(sph_surf, crit032):
    checks = {c["name"]: c for c in cli_mod.run_battery(sph_surf, crit032, {})}
    assert all(c["pass"] for c in checks.values()), [
        n for n, c in checks.items() if not c["pass"]]
    assert "sphere_fit" in checks and "sphere_angle" in checks
