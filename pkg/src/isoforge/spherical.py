"""Analytics for the spherical second family of curvature lines.

When the reparametrization function comes from the quartic elliptic curve
Q(s) = -(s - s1)^2 (s - s2)^2 + delta^2 Q3(s), every v-curve of the surface
lies on a sphere.  This module integrates the linear phi-system that encodes
the sphere data along u, recovers the sphere centers Z(u), radii and
intersection angles, and evaluates the closed-form axis direction Z'(omega)
in the moving frame at u = omega -- the local formula that must reproduce
the (global) monodromy axis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import curvefamily, elliptic, surface as surface_mod
from .errors import SpecInvalid
from .frame import _adaptive_rk
from .reparam import SphericalSpec, fit_sphere


@dataclass(frozen=True)
class PhiTriple:
    """Solution sample (phi2, phi1, phi0) of the linear sphere-data system."""

    u: float
    phi2: float
    phi1: float
    phi0: float

    def array(self):
        return np.array([self.phi2, self.phi1, self.phi0])


@dataclass(frozen=True)
class SphereSample:
    """One spherical v-curve: center two ways, radius, intersection angle."""

    u: float
    center: np.ndarray        # from alpha/beta (v-averaged)
    radius: float             # sqrt(alpha^2 + beta^2)
    psi: float                # atan2(beta, alpha)
    alpha: float
    beta: float
    center_spread: float      # max_v |Z_v - center| (should be ~0)
    fit_center: np.ndarray    # least-squares sphere through the v-curve
    fit_radius: float


@dataclass(frozen=True)
class AxisData:
    """The axis Z'(omega) expressed in the moving frame at u = omega."""

    Zprime_omega: np.ndarray  # (3,), v-averaged assembled vector
    norm_sq: float            # closed form |Z'(omega)|^2
    z1: np.ndarray            # coefficients on e^{-h} f_u, e^{-h} f_v, n
    z2: np.ndarray
    z3: np.ndarray
    v: np.ndarray
    unit_residual: float      # max |z1^2 + z2^2 + z3^2 - 1|
    norm_sq_assembled: float  # max_v of the componentwise |Z'(omega)|^2
    spread_angle: float       # max angle between per-v assembled directions


def _spec_of(spec):
    """Accept either a SphericalSpec or a ReparamSpec carrying one."""
    if isinstance(spec, SphericalSpec):
        return spec
    filled = spec.meta.get("spec") if hasattr(spec, "meta") else None
    if filled is None:
        raise SpecInvalid("a SphericalSpec (delta, s1, s2) is required")
    return filled


def _elementary(sph: SphericalSpec):
    s1, s2 = complex(sph.s1), complex(sph.s2)
    return float(sph.delta), float((s1 + s2).real), float((s1 * s2).real)


def integrate_phis(spec, crit, us, step_tol=1e-12):
    """Integrate the 3x3 linear system for (phi2, phi1, phi0) along u.

    The system is launched at u = omega with the initial data
    delta^{-1} (1, -(s1 + s2), s1 s2) determined by the spherical spec, and
    integrated outward in both directions to reach every requested u.  The
    coefficient functions have poles where the u-denominator theta vanishes
    (u = pi/2 mod pi on the rhombic lattice), so the requested range must
    stay inside one pole-free interval around omega.
    """
    sph = _spec_of(spec)
    delta, e1, e2 = _elementary(sph)
    if delta == 0.0:
        raise SpecInvalid("delta must be nonzero")
    om = crit.omega
    y0 = np.array([1.0, -e1, e2]) / delta

    def rhs(u, y):
        c = elliptic.coeffs(float(u), crit)
        return np.array([
            -c.U1 * y[1],
            2 * c.U * y[0] - 2 * c.U1 * y[2],
            c.U * y[1],
        ])

    us = np.atleast_1d(np.asarray(us, dtype=float))
    out = {}
    above = np.sort(us[us > om + 1e-14])
    below = np.sort(us[us < om - 1e-14])[::-1]  # descending toward 0
    if np.any(np.abs(us - om) <= 1e-14):
        out[om] = y0.copy()
    if len(above):
        ys, _ = _adaptive_rk(rhs, np.concatenate([[om], above]), y0,
                             step_tol, renormalize=False)
        for u, y in zip(above, ys[1:]):
            out[float(u)] = y
    if len(below):

        def rhs_down(t, y):
            return -rhs(om - t, y)

        ys, _ = _adaptive_rk(rhs_down, np.concatenate([[0.0], om - below]), y0,
                             step_tol, renormalize=False)
        for u, y in zip(below, ys[1:]):
            out[float(u)] = y
    triples = []
    for u in us:
        key = om if abs(u - om) <= 1e-14 else float(u)
        y = out[key]
        triples.append(PhiTriple(u=float(u), phi2=float(y[0]),
                                 phi1=float(y[1]), phi0=float(y[2])))
    return triples


def alpha_beta(tr: PhiTriple, crit):
    """Sphere data alpha(u), beta(u) from a phi-triple."""
    c = elliptic.coeffs(tr.u, crit)
    den = c.U1 * tr.phi0 + c.U * tr.phi2
    return c.U1 / den, -tr.phi2 / den


def intersection_angle(tr: PhiTriple, crit) -> float:
    """psi(u) with tan(psi) = -phi2/U1, limit-safe at U1 -> 0 (u -> omega)."""
    c = elliptic.coeffs(tr.u, crit)
    return float(np.arctan2(-tr.phi2, c.U1))


def curvature_p(tr: PhiTriple, eh):
    """p(u, v) = phi2 e^{-h} + phi1 + phi0 e^h (third-fundamental-form entry)."""
    eh = np.asarray(eh, dtype=float)
    return tr.phi2 / eh + tr.phi1 + tr.phi0 * eh


def curvature_q(tr: PhiTriple, eh):
    """q = p_w / h_w = -phi2 e^{-h} + phi0 e^h."""
    eh = np.asarray(eh, dtype=float)
    return -tr.phi2 / eh + tr.phi0 * eh


def characterization_residual(surf, crit, us, n_v: int = 33,
                              step_tol: float = 1e-12) -> float:
    """Max residual of e^h - alpha q + beta h_u over a (u, v) probe grid.

    The vanishing of this combination is exactly the condition that the
    v-curves are spherical; alpha, beta, q all come from the phi-triples.
    """
    spec = surf.recipe.spec
    fam = surf.recipe.fam
    triples = integrate_phis(spec, crit, us, step_tol=step_tol)
    vs = np.linspace(0.0, spec.period, n_v)
    ws = np.asarray(spec.w(vs), dtype=float)
    worst = 0.0
    for tr in triples:
        a, b = alpha_beta(tr, crit)
        for w in ws:
            eh = float(curvefamily.exp_h(tr.u, float(w), fam))
            hu = float(np.real(curvefamily.dlog_gamma_u(tr.u, float(w), fam)))
            q = float(curvature_q(tr, eh))
            worst = max(worst, abs(eh - a * q + b * hu))
    return worst


def sphere_centers(surf, crit, u_indices=None, step_tol=1e-12):
    """Sphere center, radius and intersection angle for sampled v-curves.

    Z(u) is assembled from alpha, beta as Z = f + alpha n + beta fu/|fu|
    (v-independent up to integration error) and cross-checked against a
    least-squares sphere through the sampled v-curve.
    """
    om = crit.omega
    if u_indices is None:
        # a pole-free window around omega, clear of u = pi/2
        sel = np.nonzero((surf.u > 0.03) & (surf.u < np.pi / 2 - 0.08))[0]
        u_indices = sel[np.unique(np.linspace(0, len(sel) - 1, 9).astype(int))]
    u_indices = np.asarray(u_indices, dtype=int)
    us = surf.u[u_indices]
    triples = integrate_phis(surf.recipe.spec, crit, us, step_tol=step_tol)

    samples = []
    for i, tr in zip(u_indices, triples):
        a, b = alpha_beta(tr, crit)
        pts = surf.points[i]
        fu = surf.fu[i]
        unit_u = fu / np.linalg.norm(fu, axis=-1, keepdims=True)
        # the sphere-data normal is opposite to the assembled Gauss map
        # n = fu x fv / |..| used by the surface module
        z_v = pts - a * surf.n[i] + b * unit_u
        center = np.mean(z_v, axis=0)
        spread = float(np.max(np.linalg.norm(z_v - center, axis=-1)))
        fit_center, fit_radius = fit_sphere(pts)
        samples.append(SphereSample(
            u=float(surf.u[i]), center=center,
            radius=float(np.hypot(a, b)), psi=float(np.arctan2(b, a)),
            alpha=float(a), beta=float(b), center_spread=spread,
            fit_center=fit_center, fit_radius=float(fit_radius),
        ))
    return samples


def collinearity(samples):
    """Fit Z(u) = alpha(u) A + B and report the center-line quality.

    Returns (sv_ratio, A, B): sv_ratio is the second-to-first singular value
    ratio of the centered Z cloud (0 for perfectly collinear centers), and
    A, B the regression line in the intersection-angle parametrization.
    """
    zs = np.array([s.center for s in samples])
    alphas = np.array([s.alpha for s in samples])
    centered = zs - np.mean(zs, axis=0)
    sv = np.linalg.svd(centered, compute_uv=False)
    ratio = float(sv[1] / sv[0]) if sv[0] > 0 else 0.0
    design = np.stack([alphas, np.ones_like(alphas)], axis=1)
    sol, _, _, _ = np.linalg.lstsq(design, zs, rcond=None)
    return ratio, sol[0], sol[1]


def cone_point(surf, samples):
    """The common point of the u-curve planes, with plane distances.

    The planes of the u-curves all pass through the cone point B of the
    sphere-center line Z(u) = alpha(u) A + B.  Returns (B, max plane-to-B
    distance over the sampled v-columns).
    """
    _, _, b_point = collinearity(samples)
    worst = 0.0
    for j in range(surf.points.shape[1]):
        pts = surf.points[:, j, :]
        mean = np.mean(pts, axis=0)
        _, _, vt = np.linalg.svd(pts - mean, full_matrices=False)
        normal = vt[2]
        worst = max(worst, abs(float(np.dot(b_point - mean, normal))))
    return b_point, worst


def axis(spec, crit, surf, n_v: int = 9) -> AxisData:
    """Closed-form axis Z'(omega) in the moving frame at u = omega.

    The coefficients z1, z2, z3 on (e^{-h} f_u, e^{-h} f_v, n) are rational
    in s = e^{-h(omega, w)} with the signed sqrt(Q) carried by s'(v); the
    assembled vector must be v-independent and parallel to the monodromy
    axis of the frame.
    """
    sph = _spec_of(spec)
    delta, e1, e2 = _elementary(sph)
    rspec = surf.recipe.spec
    fam = surf.recipe.fam
    om = crit.omega
    R = elliptic.radius(crit)
    co = elliptic.coeffs_at_omega(crit)
    beta_prime = R ** 2 * (co.Uprime + e2 * co.U1prime)
    norm_sq = (R ** 2 * (2 * e1 * co.U1prime + delta ** 2 * co.U1prime ** 2
                         - co.U2)
               + R ** 4 * (co.Uprime + e2 * co.U1prime) ** 2)

    # interior v-samples of the first period (endpoints have w'(v) = 0,
    # which is fine, but spread detection benefits from generic points)
    j_sel = np.unique(np.linspace(1, np.searchsorted(surf.v, rspec.period) - 1,
                                  n_v).astype(int))
    v_sel = surf.v[j_sel]
    w_sel = np.asarray(rspec.w(v_sel), dtype=float)
    wp_sel = np.asarray(rspec.wprime(v_sel), dtype=float)

    s = np.empty(len(v_sel))
    sprime = np.empty(len(v_sel))
    for k, (w, wp) in enumerate(zip(w_sel, wp_sel)):
        eh = float(curvefamily.exp_h(om, float(w), fam))
        h_w = -float(np.imag(curvefamily.dlog_gamma_u(om, float(w), fam)))
        s[k] = 1.0 / eh
        sprime[k] = -h_w * s[k] * wp  # carries the sign of sqrt(Q)/delta

    zeta1 = (1.0 + s * beta_prime) / s
    zeta2 = R * sprime / s
    zeta3 = (R / (delta * s)) * (-delta ** 2 * co.U1prime * s
                                 + (s - e1 / 2) ** 2 + e2 - e1 ** 2 / 4)

    f = surface_mod.fields_at(fam, rspec, np.array([om]), v_sel,
                              surf.phi[j_sel])
    eh_row = f["expH"][0][:, None]
    # minus on the normal term: the surface module's Gauss map fu x fv is
    # opposite to the normal the sphere data is written in (same flip as in
    # sphere_centers)
    assembled = (zeta1[:, None] * f["fu"][0] / eh_row
                 + zeta2[:, None] * f["fv"][0] / eh_row
                 - zeta3[:, None] * f["n"][0])
    norms = np.linalg.norm(assembled, axis=-1)
    units = assembled / norms[:, None]
    mean_unit = units[0]
    cosang = np.clip(units @ mean_unit, -1.0, 1.0)
    spread = float(np.max(np.arccos(cosang)))
    scale = np.sqrt(norm_sq)
    return AxisData(
        Zprime_omega=np.mean(assembled, axis=0),
        norm_sq=float(norm_sq),
        z1=zeta1 / scale, z2=zeta2 / scale, z3=zeta3 / scale, v=v_sel,
        unit_residual=float(np.max(np.abs(
            (zeta1 ** 2 + zeta2 ** 2 + zeta3 ** 2) / norm_sq - 1.0))),
        norm_sq_assembled=float(np.max(norms ** 2)),
        spread_angle=spread,
    )
