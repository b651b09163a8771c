"""Sphere data of the second curvature-line family and the rotation axis."""

import numpy as np

from isoforge import curvefamily, elliptic, frame, spherical

RNG = np.random.default_rng(31)


def _probe_us(crit, n=7):
    """u-samples inside the pole-free window around omega."""
    return np.sort(np.concatenate(
        [[crit.omega], RNG.uniform(0.1, np.pi / 2 - 0.15, n)]))


def test_phi_initial_data(sph_spec, crit032):
    """At u = omega the triple is delta^{-1}(1, -(s1+s2), s1 s2), which makes
    alpha(omega) = 0 and beta(omega) = R."""
    sph = sph_spec.meta["spec"]
    tr = spherical.integrate_phis(sph_spec, crit032, [crit032.omega])[0]
    e1 = float((sph.s1 + sph.s2).real)
    e2 = float((sph.s1 * sph.s2).real)
    want = np.array([1.0, -e1, e2]) / sph.delta
    assert np.max(np.abs(tr.array() - want)) < 1e-14

    a, b = spherical.alpha_beta(tr, crit032)
    R = elliptic.radius(crit032)
    assert abs(a) < 1e-12
    assert abs(b - R) < 1e-10 * abs(R)


def test_characterization_residual(sph_surf, crit032):
    us = _probe_us(crit032)
    res = spherical.characterization_residual(sph_surf, crit032, us)
    assert res < 1e-7


def test_q_is_p_w_over_h_w(sph_spec, crit032):
    """q = p_w / h_w, with p_w by finite differences of p(u, w)."""
    tr = spherical.integrate_phis(sph_spec, crit032, [0.9])[0]
    h = 1e-6
    for w in (0.6, 1.0, 1.4):
        hw = -float(np.imag(curvefamily.dlog_gamma_u(tr.u, w, crit032)))
        pp = spherical.curvature_p(
            tr, curvefamily.exp_h(tr.u, w + h, crit032))
        pm = spherical.curvature_p(
            tr, curvefamily.exp_h(tr.u, w - h, crit032))
        q = spherical.curvature_q(tr, curvefamily.exp_h(tr.u, w, crit032))
        assert abs((pp - pm) / (2 * h) - q * hw) < 1e-7 * max(1.0, abs(q * hw))


def test_ratio_p_over_hw_is_u_independent(sph_spec, crit032):
    """p / h_w depends on v only, with |p / h_w| = sqrt(1 - w'(v)^2)."""
    us = _probe_us(crit032, 5)
    triples = spherical.integrate_phis(sph_spec, crit032, us)
    for v in RNG.uniform(0.05, 0.95, 5) * sph_spec.period:
        w = float(sph_spec.w(v))
        wp = float(sph_spec.wprime(v))
        vals = []
        for tr in triples:
            eh = float(curvefamily.exp_h(tr.u, w, crit032))
            hw = -float(np.imag(curvefamily.dlog_gamma_u(tr.u, w, crit032)))
            vals.append(float(spherical.curvature_p(tr, eh)) / hw)
        vals = np.array(vals)
        assert np.max(np.abs(vals - vals[0])) < 1e-7
        assert abs(abs(vals[0]) - np.sqrt(1.0 - wp ** 2)) < 1e-7


def test_intersection_angle_consistent(sph_spec, crit032):
    """atan2(-phi2, U1) and atan2(beta, alpha) agree modulo pi."""
    for tr in spherical.integrate_phis(sph_spec, crit032,
                                       _probe_us(crit032, 5)):
        a, b = spherical.alpha_beta(tr, crit032)
        psi_loc = spherical.intersection_angle(tr, crit032)
        psi_geo = float(np.arctan2(b, a))
        gap = (psi_loc - psi_geo + np.pi / 2) % np.pi - np.pi / 2
        assert abs(gap) < 1e-12


def test_sphere_centers(sph_surf, crit032):
    R = abs(elliptic.radius(crit032))
    samples = spherical.sphere_centers(sph_surf, crit032)
    assert len(samples) >= 5
    for s in samples:
        # assembled center is v-independent and matches the fitted sphere
        assert s.center_spread < 1e-6 * R
        assert np.max(np.abs(s.center - s.fit_center)) < 1e-6 * R
        assert abs(abs(s.radius) - s.fit_radius) < 1e-6 * R


def test_center_at_omega_is_origin(sph_surf, crit032):
    """alpha(omega) = 0, beta(omega) = R place the u = omega sphere at the
    origin: Z = f + R f_u/|f_u| with f_u/|f_u| = -f/R there."""
    from isoforge import surface
    R = elliptic.radius(crit032)
    f = surface.fields_at(crit032, sph_surf.recipe.spec,
                          np.array([crit032.omega]), sph_surf.v, sph_surf.phi)
    unit_u = f["fu"][0] / np.linalg.norm(f["fu"][0], axis=-1, keepdims=True)
    z = f["points"][0] + R * unit_u
    assert np.max(np.linalg.norm(z, axis=-1)) < 1e-8 * abs(R)


def test_centers_collinear_and_cone_point(sph_surf, crit032):
    samples = spherical.sphere_centers(sph_surf, crit032)
    ratio, a_dir, b_point = spherical.collinearity(samples)
    assert ratio < 1e-6
    # the regression reproduces each center
    for s in samples:
        line = s.alpha * a_dir + b_point
        assert np.max(np.abs(line - s.center)) < 1e-6

    _, worst = spherical.cone_point(sph_surf, samples)
    assert worst < 1e-7


def test_axis_closed_form(sph_spec, sph_surf, crit032):
    ax = spherical.axis(sph_spec, crit032, sph_surf)
    assert ax.unit_residual < 1e-9
    assert ax.spread_angle < 1e-7
    assert abs(ax.norm_sq_assembled - ax.norm_sq) < 1e-8 * abs(ax.norm_sq)


def test_axis_z2_encodes_sqrt_q(sph_spec, sph_surf, crit032):
    """|z2| carries the signed root: z2 sqrt(|Z'|^2) delta s / R = sqrt(Q(s))
    up to the sign of the branch."""
    sph = sph_spec.meta["spec"]
    R = elliptic.radius(crit032)
    ax = spherical.axis(sph_spec, crit032, sph_surf)
    ws = np.asarray(sph_spec.w(ax.v), dtype=float)
    for z2, w in zip(ax.z2, ws):
        s = 1.0 / float(curvefamily.exp_h(crit032.omega, float(w), crit032))
        q = max(float(np.polyval(sph.q_coeffs, s)), 0.0)
        got = abs(z2 * np.sqrt(ax.norm_sq) * sph.delta * s / R)
        assert abs(got - np.sqrt(q)) < 1e-9 * max(1.0, np.sqrt(q))


def test_axis_parallel_to_monodromy(sph_spec, sph_surf, crit032):
    ax = spherical.axis(sph_spec, crit032, sph_surf)
    mono = frame.monodromy(frame.integrate(sph_spec, crit032))
    unit = ax.Zprime_omega / np.linalg.norm(ax.Zprime_omega)
    c = float(np.clip(abs(np.dot(unit, mono.axis.array())), -1.0, 1.0))
    assert np.arccos(c) < 1e-6
