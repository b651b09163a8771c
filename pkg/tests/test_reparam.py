"""Reparametrization specs: admissibility, s(w), spherical construction."""

import numpy as np
import pytest

from isoforge import curvefamily, elliptic, reparam
from isoforge.errors import DomainW, NoOscillation, SpecInvalid

RNG = np.random.default_rng(23)


def test_analytic_admissible(lat032):
    spec = reparam.analytic(np.pi * lat032.lam, 0.3, 2 * np.pi)
    rep = reparam.validate(spec, lat032)
    assert rep.ok and not rep.flags
    assert rep.max_abs_wprime <= 0.3 + 1e-12


def test_analytic_too_steep_flagged(lat032):
    spec = reparam.analytic(np.pi * lat032.lam, 2.0, 2 * np.pi)
    rep = reparam.validate(spec, lat032)
    assert not rep.ok
    assert any("w'" in f or "escapes" in f for f in rep.flags)


def test_constant_flagged_as_revolution(lat032):
    spec = reparam.constant(np.pi * lat032.lam)
    rep = reparam.validate(spec, lat032)
    assert rep.ok  # admissible ...
    assert any("revolution" in f for f in rep.flags)  # ... but flagged


def test_out_of_band_flagged(lat032):
    top = 2 * np.pi * lat032.lam
    spec = reparam.analytic(top, 0.2, 2 * np.pi)  # mean on the band edge
    rep = reparam.validate(spec, lat032)
    assert not rep.ok
    assert any("escapes" in f for f in rep.flags)


def test_s_of_w_matches_exp_minus_h(crit032):
    top = 2 * np.pi * crit032.lattice.lam
    for w in RNG.uniform(0.1 * top, 0.9 * top, 20):
        s = reparam.s_of_w(float(w), crit032)
        eh = curvefamily.exp_h(crit032.omega, float(w), crit032)
        assert abs(s - 1.0 / eh) < 1e-10 * max(1.0, abs(s))


def test_s_of_w_satisfies_cubic(crit032):
    """s'(w)^2 = Q3(s) with s' by central differences."""
    cub = elliptic.q3(crit032)
    h = 1e-5
    top = 2 * np.pi * crit032.lattice.lam
    for w in (0.3 * top, 0.5 * top, 0.7 * top):
        s = reparam.s_of_w(w, crit032)
        sp = (reparam.s_of_w(w + h, crit032)
              - reparam.s_of_w(w - h, crit032)) / (2 * h)
        q3s = cub(s)
        assert abs(sp ** 2 - q3s) < 1e-8 * max(1.0, abs(q3s))


def test_s_of_w_domain(crit032):
    with pytest.raises(DomainW):
        reparam.s_of_w(-0.1, crit032)
    with pytest.raises(DomainW):
        reparam.s_of_w(2 * np.pi * crit032.lattice.lam, crit032)


def test_s_of_w_monotone(crit032):
    top = 2 * np.pi * crit032.lattice.lam
    ws = np.linspace(0.05 * top, 0.95 * top, 40)
    ss = reparam.s_of_w(ws, crit032)
    assert np.all(np.diff(ss) > 0)


# ---------------------------------------------------------------------------
# spherical construction


def test_spherical_q_coefficient_identity(sph_spec, crit032):
    """Stored Q equals -(s-s1)^2(s-s2)^2 + delta^2 Q3 coefficientwise."""
    sph = sph_spec.meta["spec"]
    cub = elliptic.q3(crit032)
    pair = np.array([1.0, -float((sph.s1 + sph.s2).real),
                     float((sph.s1 * sph.s2).real)])
    want = (sph.delta ** 2
            * np.concatenate([[0.0], [cub.c3, cub.c2, cub.c1, cub.c0]])
            - np.polymul(pair, pair))
    got = np.array(sph.q_coeffs)
    assert np.max(np.abs(got - want)) < 1e-12 * max(1.0, np.max(np.abs(want)))


def test_spherical_passes_validation(sph_spec, lat032):
    rep = reparam.validate(sph_spec, lat032)
    assert rep.ok, rep.flags
    assert rep.root_residual < 1e-8


def test_spherical_periodicity(sph_spec):
    vs = np.linspace(0.0, sph_spec.period, 101)
    a = np.asarray(sph_spec.w(vs))
    b = np.asarray(sph_spec.w(vs + sph_spec.period))
    assert np.max(np.abs(a - b)) < 1e-9
    # half-period mirror symmetry w(V - v) = w(v)
    c = np.asarray(sph_spec.w(sph_spec.period - vs))
    assert np.max(np.abs(a - c)) < 1e-9


def test_spherical_wprime_vs_fd(sph_spec):
    """The recorded derivative matches finite differences of w(v)."""
    h = 1e-6
    for v in RNG.uniform(0.05, 0.95, 8) * sph_spec.period:
        fd = (float(sph_spec.w(v + h)) - float(sph_spec.w(v - h))) / (2 * h)
        assert abs(fd - float(sph_spec.wprime(v))) < 1e-6


def test_spherical_composite_derivative(sph_spec, crit032):
    """w'(v) = w'(s) s'(v) = sqrt(Q)/ (|delta| sqrt(Q3)) on the s-track."""
    sph = sph_spec.meta["spec"]
    cub = elliptic.q3(crit032)
    s_of_v = sph_spec.meta["s_of_v"]
    for v in RNG.uniform(0.02, 0.48, 6) * sph_spec.period:
        s = float(s_of_v(v))
        want = (np.sqrt(max(np.polyval(sph.q_coeffs, s), 0.0))
                / (abs(sph.delta) * np.sqrt(float(cub(s)))))
        assert abs(float(sph_spec.wprime(v)) - want) < 1e-9


def test_spherical_signed_root_consistent(sph_spec):
    vs = np.linspace(0.0, sph_spec.period, 500)
    wp = np.asarray(sph_spec.wprime(vs))
    root = np.asarray(sph_spec.signed_root(vs))
    assert np.max(np.abs(1.0 - wp ** 2 - root ** 2)) < 1e-8


def test_spherical_real_pair_root_changes_sign(crit032):
    """A real-pair spec whose oscillation interval crosses s1 or s2 has a
    sign-changing root; the recorded branch is the smooth one."""
    spec = reparam.build_spherical(
        reparam.SphericalSpec(delta=0.4, s1=0.5, s2=0.9), crit032)
    vs = np.linspace(0.0, spec.period, 2000)
    root = np.asarray(spec.signed_root(vs))
    assert np.min(root) < 0 < np.max(root)
    rep = reparam.validate(spec, crit032.lattice)
    assert rep.ok, rep.flags


def test_spherical_endpoint_consistency(sph_spec):
    """Accumulated w at the top turning point matches direct inversion."""
    assert sph_spec.meta["endpoint_mismatch"] < 1e-7


def test_spherical_rejects_bad_specs(crit032):
    with pytest.raises(SpecInvalid):
        reparam.build_spherical(
            reparam.SphericalSpec(delta=0.0, s1=0.5, s2=0.9), crit032)
    with pytest.raises(SpecInvalid):
        reparam.build_spherical(
            reparam.SphericalSpec(delta=0.4, s1=0.5 + 0.3j, s2=0.7 + 0.3j),
            crit032)


def test_spherical_no_oscillation_for_tiny_delta(crit032):
    """delta -> 0 makes Q -> -(s-s1)^2(s-s2)^2 <= 0: no interval survives."""
    with pytest.raises(NoOscillation):
        reparam.build_spherical(
            reparam.SphericalSpec(delta=1e-6, s1=0.45 + 0.25j,
                                  s2=0.45 - 0.25j), crit032)


# ---------------------------------------------------------------------------
# sphere fitting and the geometric certificate


def test_fit_sphere_recovers_synthetic():
    center = np.array([0.3, -1.2, 2.0])
    radius = 1.7
    rng = np.random.default_rng(3)
    dirs = rng.normal(size=(40, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    pts = center + radius * dirs
    c, r = reparam.fit_sphere(pts)
    assert np.max(np.abs(c - center)) < 1e-10
    assert abs(r - radius) < 1e-10


def test_sphericality_certificate_positive(sph_surf):
    cert = reparam.sphericality_certificate(sph_surf)
    assert cert.ok
    assert cert.sphere_residual_rel < 1e-6
    assert cert.angle_std_max < 1e-7


def test_sphericality_certificate_negative_control(torus_surf):
    """A generic analytic reparametrization has non-spherical v-curves."""
    cert = reparam.sphericality_certificate(torus_surf)
    assert not cert.ok
    assert cert.sphere_residual_rel > 1e-3
