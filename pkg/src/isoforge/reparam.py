"""Reparametrization functions w(v) selecting the planar curve per v-slice.

An admissible reparametrization takes values in the open band (0, 2*pi*lam),
has |w'(v)| <= 1, and carries sqrt(1 - w'(v)^2) as a *signed* smooth function
(the sign may flip only where w' = +-1).  The signed root is recorded on the
spec; downstream frame integration never re-derives it from w'.

Two families are provided:

* analytic  -- w(v) = c0 + A sin(2 pi v / V), the tunable closed-form family;
* spherical -- w(v) constructed so the second family of curvature lines is
  spherical.  With s(w) = e^{-h(omega, w)} the construction is governed by two
  elliptic curves,

      w'(s) = 1/sqrt(Q3(s)),   v'(s) = delta/sqrt(Q(s)),
      Q(s)  = -(s - s1)^2 (s - s2)^2 + delta^2 Q3(s),

  for a nonzero real delta and s1, s2 either both real or complex conjugate.
  s oscillates between two adjacent simple roots of Q; the square-root
  endpoint singularities are removed by the substitution
  s = s_a + (s_b - s_a) sin^2(theta) and the integrals are evaluated by
  per-panel Gauss-Legendre quadrature.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import brentq

from .elliptic import CriticalParams, q3
from .errors import DegenerateFit, DomainW, NoOscillation, SingularRoot, SpecInvalid
from .theta import theta_grid

_REAL_TOL = 1e-9


@dataclass(frozen=True)
class ReparamSpec:
    """A reparametrization function with its derivative and signed root.

    w, wprime and signed_root are vectorized callables of v; signed_root(v)
    is the recorded branch of sqrt(1 - wprime(v)^2).
    """

    kind: str
    period: float
    w: Callable
    wprime: Callable
    signed_root: Callable
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SphericalSpec:
    """(delta, s1, s2) defining the second elliptic curve Q.

    q_coeffs (descending-degree quartic coefficients of Q) and period_V are
    filled in by build_spherical.
    """

    delta: float
    s1: complex
    s2: complex
    q_coeffs: Optional[tuple] = None
    period_V: Optional[float] = None


@dataclass(frozen=True)
class ValidationReport:
    w_min: float
    w_max: float
    band_top: float
    max_abs_wprime: float
    root_residual: float
    root_dd2: float
    flags: tuple
    ok: bool


# ---------------------------------------------------------------------------
# closed-form families


def analytic(mean: float, amplitude: float, period: float) -> ReparamSpec:
    """w(v) = mean + amplitude * sin(2 pi v / period)."""
    freq = 2 * np.pi / period

    def w(v):
        return mean + amplitude * np.sin(freq * np.asarray(v, dtype=float))

    def wprime(v):
        return amplitude * freq * np.cos(freq * np.asarray(v, dtype=float))

    def signed_root(v):
        return np.sqrt(np.clip(1.0 - wprime(v) ** 2, 0.0, None))

    return ReparamSpec(
        kind="analytic", period=float(period), w=w, wprime=wprime,
        signed_root=signed_root,
        meta={"mean": float(mean), "amplitude": float(amplitude)},
    )


def constant(level: float, period: float = 2 * np.pi) -> ReparamSpec:
    """Constant w; admissible but corresponds to a surface of revolution."""
    spec = analytic(level, 0.0, period)
    return replace(spec, meta={**spec.meta, "constant": True})


def validate(spec: ReparamSpec, lat, n: int = 4001) -> ValidationReport:
    """Dense-sampling admissibility report over one period."""
    v = np.linspace(0.0, spec.period, n)
    dv = v[1] - v[0]
    w = np.asarray(spec.w(v), dtype=float)
    wp = np.asarray(spec.wprime(v), dtype=float)
    root = np.asarray(spec.signed_root(v), dtype=float)
    top = 2 * np.pi * lat.lam

    flags = []
    w_min, w_max = float(np.min(w)), float(np.max(w))
    if not (0.0 < w_min and w_max < top):
        flags.append(f"range [{w_min:.6g}, {w_max:.6g}] escapes the band (0, {top:.6g})")
    max_wp = float(np.max(np.abs(wp)))
    if max_wp > 1.0 + 1e-12:
        flags.append(f"|w'| reaches {max_wp:.6g} > 1")
    inside = np.abs(wp) <= 1.0
    root_residual = float(np.max(np.abs(1.0 - wp[inside] ** 2 - root[inside] ** 2))) \
        if np.any(inside) else np.inf
    if root_residual > 1e-8:
        flags.append("signed root inconsistent with 1 - w'^2")
    # smoothness proxy for the signed branch: bounded second divided differences
    root_dd2 = float(np.max(np.abs(np.diff(root, 2)))) / dv ** 2 if n >= 3 else 0.0
    if w_max - w_min < 1e-14:
        flags.append("constant w: surface of revolution excluded")

    ok = (0.0 < w_min and w_max < top and max_wp <= 1.0 + 1e-12
          and root_residual <= 1e-8)
    return ValidationReport(
        w_min=w_min, w_max=w_max, band_top=top, max_abs_wprime=max_wp,
        root_residual=root_residual, root_dd2=root_dd2,
        flags=tuple(flags), ok=ok,
    )


# ---------------------------------------------------------------------------
# the elliptic-curve coordinate s(w) = e^{-h(omega, w)}


def s_of_w(w, crit: CriticalParams):
    """s(w) = th2(om)^2/th2(0)^2 * (th1(om)^2/th2(om)^2 - th1(iw/2)^2/th2(iw/2)^2).

    Monotone increasing on (0, 2 pi lam), from the real root of Q3 at w -> 0
    to +infinity at the top of the band (theta2(i w / 2) -> 0 there).
    """
    lat, om = crit.lattice, crit.omega
    warr = np.asarray(w, dtype=float)
    top = 2 * np.pi * lat.lam
    if np.any(warr <= 0) or np.any(warr >= top):
        raise DomainW(f"w must lie in the open band (0, {top:.6g})")
    t2om = theta_grid(2, om, lat)
    t20 = theta_grid(2, 0.0, lat)
    ratio = theta_grid(1, 0.5j * warr, lat) / theta_grid(2, 0.5j * warr, lat)
    val = t2om ** 2 / t20 ** 2 * (theta_grid(1, om, lat) ** 2 / t2om ** 2 - ratio ** 2)
    out = np.real(val)
    if np.max(np.abs(np.imag(val))) > _REAL_TOL * max(1.0, np.max(np.abs(out))):
        raise ArithmeticError("s(w) should be real")
    return float(out) if np.isscalar(w) else out


def _w_of_s(starget: float, crit: CriticalParams) -> float:
    """Invert the monotone map s(w) by bracketed root finding."""
    top = 2 * np.pi * crit.lattice.lam
    # stay away from the band ends: theta2(i w / 2) vanishes at the top, and
    # cancellation there spoils the realness of the s(w) evaluation
    lo, hi = 1e-6 * top, top * (1 - 1e-4)
    slo, shi = s_of_w(lo, crit), s_of_w(hi, crit)
    if not (slo < starget < shi):
        raise NoOscillation(
            f"s = {starget:.6g} outside the attainable range ({slo:.6g}, {shi:.6g})"
        )
    return brentq(lambda w: s_of_w(w, crit) - starget, lo, hi,
                  xtol=1e-14, rtol=8.9e-16)


# ---------------------------------------------------------------------------
# spherical construction


def _real_scalar(z, what: str) -> float:
    z = complex(z)
    if abs(z.imag) > _REAL_TOL * max(1.0, abs(z)):
        raise SpecInvalid(f"{what} must be real, got {z}")
    return z.real


def build_spherical(spec: SphericalSpec, crit: CriticalParams,
                    n_panels: int = 1600) -> ReparamSpec:
    """Construct the periodic w(v) with spherical v-curvature lines.

    s oscillates on an interval [s_a, s_b] bounded by simple roots of Q with
    Q > 0 inside and Q3 > 0 throughout; v and w are elliptic integrals of s,
    regularized by s = s_a + (s_b - s_a) sin^2(theta) and accumulated by
    per-panel Gauss-Legendre quadrature.  The half period is mirrored to a
    full period: w(V - v) = w(v).
    """
    delta = float(spec.delta)
    if delta == 0.0:
        raise SpecInvalid("delta must be nonzero")
    s1, s2 = complex(spec.s1), complex(spec.s2)
    e1 = _real_scalar(s1 + s2, "s1 + s2")
    e2 = _real_scalar(s1 * s2, "s1 * s2")
    if abs(s1.imag) > _REAL_TOL and abs(s2 - np.conj(s1)) > 1e-12 * max(1.0, abs(s1)):
        raise SpecInvalid("s1, s2 must be both real or a conjugate pair")

    cub = q3(crit)
    q3_coeffs = np.array([cub.c3, cub.c2, cub.c1, cub.c0])
    pair = np.array([1.0, -e1, e2])  # (s - s1)(s - s2)
    qcoef = delta ** 2 * np.concatenate([[0.0], q3_coeffs]) - np.polymul(pair, pair)

    # the single real root of Q3 bounds the attainable s-range from below
    s3_real = [r.real for r in cub.roots if abs(r.imag) < 1e-9 * max(1.0, abs(r))]
    if len(s3_real) != 1:
        raise NoOscillation("could not isolate the real root of Q3")
    s_floor = s3_real[0]

    roots = np.roots(qcoef)
    rr = np.sort(np.array(
        [r.real for r in roots if abs(r.imag) < 1e-7 * max(1.0, abs(r))]))
    # polish the real roots on Q itself
    dq = np.polyder(qcoef)
    for _ in range(3):
        rr = rr - np.polyval(qcoef, rr) / np.polyval(dq, rr)

    candidates = []
    for a, b in zip(rr[:-1], rr[1:]):
        if b - a < 1e-10:
            continue
        mid = 0.5 * (a + b)
        if np.polyval(qcoef, mid) > 0 and a > s_floor + 1e-8:
            candidates.append((float(a), float(b)))
    if not candidates:
        raise NoOscillation(
            f"Q has no oscillation interval above the real root {s_floor:.6g} of Q3"
        )
    s_a, s_b = candidates[0]
    scale = np.max(np.abs(qcoef)) * max(1.0, abs(s_b)) ** 3
    for endpoint in (s_a, s_b):
        if abs(np.polyval(dq, endpoint)) < 1e-8 * scale:
            raise SingularRoot(f"root of Q at s = {endpoint:.6g} is not simple")

    # Q(s) = (s - s_a)(s_b - s) * Ptil(s) with Ptil > 0 on [s_a, s_b]
    quot, rem = np.polydiv(qcoef, np.polymul([1.0, -s_a], [-1.0, s_b]))
    if np.max(np.abs(rem)) > 1e-7 * scale:
        raise SingularRoot("oscillation endpoints are not roots of Q to tolerance")

    span = s_b - s_a
    edges = np.linspace(0.0, np.pi / 2, n_panels + 1)
    nodes, weights = leggauss(5)

    def cumulative(g):
        """Panel-wise Gauss-Legendre antiderivative of g at the panel edges."""
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        pts = mid[:, None] + half[:, None] * nodes[None, :]
        panel = half * (np.asarray(g(pts)) @ weights)
        return np.concatenate([[0.0], np.cumsum(panel)])

    def s_of_theta(theta):
        return s_a + span * np.sin(theta) ** 2

    v_edges = cumulative(
        lambda th: 2 * abs(delta) / np.sqrt(np.polyval(quot, s_of_theta(th))))
    w_edges = cumulative(
        lambda th: span * np.sin(2 * th) / np.sqrt(cub(s_of_theta(th))))
    w_a = _w_of_s(s_a, crit)
    w_edges = w_a + w_edges
    w_b_direct = _w_of_s(s_b, crit)
    endpoint_mismatch = abs(w_edges[-1] - w_b_direct)

    top = 2 * np.pi * crit.lattice.lam
    if not (0.0 < w_a and w_edges[-1] < top):
        raise NoOscillation("constructed w(v) escapes the admissible band")

    half_period = float(v_edges[-1])
    period = 2 * half_period
    # exact first derivatives at the edges: s'(v) = sqrt(Q)/|delta| and
    # w'(v) = sqrt(Q)/(|delta| sqrt(Q3)) -- Hermite data keeps the
    # interpolants consistent with the closed-form derivatives
    s_edges = s_of_theta(edges)
    ds_edges = np.sqrt(np.clip(np.polyval(qcoef, s_edges), 0.0, None)) / abs(delta)
    s_spline = CubicHermiteSpline(v_edges, s_edges, ds_edges)
    w_spline = CubicHermiteSpline(v_edges, w_edges, ds_edges / np.sqrt(cub(s_edges)))

    def _fold(v):
        vv = np.mod(np.asarray(v, dtype=float), period)
        mirrored = vv > half_period
        return np.where(mirrored, period - vv, vv), mirrored

    def _s(v):
        vv, _ = _fold(v)
        return np.clip(s_spline(vv), s_a, s_b)

    def w(v):
        vv, _ = _fold(v)
        out = w_spline(vv)
        return float(out) if np.isscalar(v) else out

    def wprime(v):
        _, mirrored = _fold(v)
        s = _s(v)
        mag = (np.sqrt(np.clip(np.polyval(qcoef, s), 0.0, None))
               / (abs(delta) * np.sqrt(cub(s))))
        out = np.where(mirrored, -mag, mag)
        return float(out) if np.isscalar(v) else out

    def signed_root(v):
        s = _s(v)
        out = np.polyval(pair, s) / (delta * np.sqrt(cub(s)))
        return float(out) if np.isscalar(v) else out

    filled = replace(spec, q_coeffs=tuple(float(c) for c in qcoef),
                     period_V=period)
    return ReparamSpec(
        kind="spherical", period=period, w=w, wprime=wprime,
        signed_root=signed_root,
        meta={
            "spec": filled,
            "s_range": (s_a, s_b),
            "w_range": (w_a, float(w_edges[-1])),
            "candidates": tuple(candidates),
            "s_of_v": lambda v: (float(_s(v)) if np.isscalar(v) else _s(v)),
            "endpoint_mismatch": float(endpoint_mismatch),
        },
    )


# ---------------------------------------------------------------------------
# sphericality certificate (geometric, surface-level)


@dataclass(frozen=True)
class SphericalityReport:
    u_indices: tuple
    centers: tuple
    radii: tuple
    sphere_residual_rel: float
    angle_std_max: float
    ok: bool


def fit_sphere(points):
    """Least-squares sphere through an (m, 3) point cloud -> (center, radius)."""
    pts = np.asarray(points, dtype=float)
    a = np.hstack([2 * pts, np.ones((len(pts), 1))])
    b = np.sum(pts ** 2, axis=1)
    sol, _, rank, _ = np.linalg.lstsq(a, b, rcond=None)
    if rank < 4:
        raise DegenerateFit("v-curve is too flat for a sphere fit")
    center = sol[:3]
    radius = float(np.sqrt(sol[3] + center @ center))
    return center, radius


def sphericality_certificate(surface, n_u: int = 5, tol: float = 1e-6) -> SphericalityReport:
    """Fit spheres to sampled v-curves and check the Joachimsthal angle.

    For each sampled u0 the v-curve must lie on a sphere (distance residual
    relative to the fitted radius) and the surface normal must make a constant
    angle with the sphere's radial direction.
    """
    pts_grid = np.asarray(surface.points, dtype=float)
    n_grid = np.asarray(surface.n, dtype=float)
    nu = pts_grid.shape[0]
    idx = np.unique(np.linspace(0, nu - 1, n_u).astype(int))

    centers, radii, res, ang = [], [], [], []
    for i in idx:
        pts = pts_grid[i]
        center, radius = fit_sphere(pts)
        dist = np.linalg.norm(pts - center, axis=1)
        res.append(np.max(np.abs(dist - radius)) / radius)
        radial = (pts - center) / dist[:, None]
        cosang = np.sum(n_grid[i] * radial, axis=1)
        ang.append(np.std(cosang))
        centers.append(tuple(center))
        radii.append(radius)

    worst = float(np.max(res))
    ang_max = float(np.max(ang))
    return SphericalityReport(
        u_indices=tuple(int(i) for i in idx),
        centers=tuple(centers),
        radii=tuple(radii),
        sphere_residual_rel=worst,
        angle_std_max=ang_max,
        ok=worst < tol and ang_max < 1e-5,
    )
