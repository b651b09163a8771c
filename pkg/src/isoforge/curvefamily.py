"""The holomorphic family of planar curves gamma(u, w) and its diagnostics.

With z = u + i*w, omega in (0, pi/2) and td the lattice's companion theta
(theta2 on rhombic, theta4 on rectangular lattices), the family is

    gamma   = -i * 2 td(om)^2/(th1'(0) th1(2 om))
              * th1((z - 3 om)/2)/th1((z + om)/2) * e^{z c},
    gamma_u = -i (td((z - om)/2)/th1((z + om)/2))^2 * e^{z c} = e^{h + i sigma},
    W1(w)   = i th1'(0) td(om - i w) / (2 td(om) th1(i w)) * e^{i w c},

with c = td'(om)/td(om).  At the critical omega of a rhombic lattice c = 0 and
gamma becomes 2*pi-periodic in u (closed curves).  The curves live in the band
w in (0, 2*pi*lam); evaluation is also allowed at mirrored negative w so the
conjugation symmetry conj(gamma(u, w)) = -gamma(u, -w) can be checked.

In hyperbolic standardization the curves are area-constrained quasiperiodic
hyperbolic elastica: with hyperbolic speed a = 2|W1| (so arclength s = a*u),
the unit tangent Q = e^{i sigma~} satisfies the quartic Euler-Lagrange integral

    Q_s^2 + Q^4/4 + conj(L) Q^3 + mu Q^2 + L Q + 1/4 = 0,

with L = (d/dw log W1)/a and real mu, and the hyperbolic curvature is
kappa = sigma~_u / a + cos sigma~ (verified against the osculating-circle
construction).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elliptic import CriticalParams, _real
from .errors import DomainW, PoleProximity
from .theta import Lattice, theta_grid

_POLE_TOL = 1e-10


@dataclass(frozen=True)
class FamilyParams:
    """Lattice + omega for the general (non-critical) code path."""

    lattice: Lattice
    omega: float


@dataclass(frozen=True)
class CurveSample:
    u: float
    w: float
    gamma: complex
    gamma_u: complex
    expH: float
    expIsigma: complex
    W1: complex


@dataclass(frozen=True)
class ElasticaConstants:
    a: float
    Lambda: complex
    mu: float
    mu_imag: float           # imaginary part of the fitted constant (~0)
    residual_max: float
    residual_mean: float
    mu_std: float


@dataclass(frozen=True)
class LimitCurveSample:
    u: float
    w: float
    gamma_hat: complex
    W_hat: float
    r: float
    d: complex


def _den_index(lat: Lattice) -> int:
    return 2 if lat.kind == "rhombic" else 4


def _cfac(lat: Lattice, omega: float) -> complex:
    i = _den_index(lat)
    return complex(theta_grid(i, omega, lat, 1) / theta_grid(i, omega, lat))


def _check_w(w: float, lat: Lattice, mirrored: bool = False):
    top = 2 * np.pi * lat.lam
    if mirrored:
        ok = 0 < abs(w) < top
    else:
        ok = 0 < w < top
    if not ok:
        band = f"(-{top:.6g}, 0) u (0, {top:.6g})" if mirrored else f"(0, {top:.6g})"
        raise DomainW(f"w = {w} outside the admissible band {band}")


def _th1_den(z, omega, lat):
    den = theta_grid(1, (z + omega) / 2, lat)
    if np.min(np.abs(den)) < _POLE_TOL:
        raise PoleProximity("theta1((z + omega)/2) too close to zero")
    return den


def gamma(u, w: float, fam) -> complex:
    """The planar curve gamma(u, w); u may be an array."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat, mirrored=True)
    z = np.asarray(u, dtype=complex) + 1j * w
    i = _den_index(lat)
    pref = -2j * theta_grid(i, om, lat) ** 2 / (
        theta_grid(1, 0.0, lat, 1) * theta_grid(1, 2 * om, lat))
    val = pref * theta_grid(1, (z - 3 * om) / 2, lat) / _th1_den(z, om, lat)
    val = val * np.exp(z * _cfac(lat, om))
    return complex(val) if np.isscalar(u) else val


def gamma_u(u, w: float, fam) -> complex:
    """d(gamma)/du = -i d(gamma)/dw = e^{h + i sigma}, by the closed form."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat, mirrored=True)
    z = np.asarray(u, dtype=complex) + 1j * w
    i = _den_index(lat)
    val = -1j * (theta_grid(i, (z - om) / 2, lat) / _th1_den(z, om, lat)) ** 2
    val = val * np.exp(z * _cfac(lat, om))
    return complex(val) if np.isscalar(u) else val


def exp_h(u, w: float, fam):
    """Metric factor e^{h(u,w)} (positive real)."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat)
    u_arr = np.asarray(u, dtype=float)
    z = u_arr + 1j * w
    zb = u_arr - 1j * w
    i = _den_index(lat)
    val = (theta_grid(i, (z - om) / 2, lat) * theta_grid(i, (zb - om) / 2, lat)
           / (_th1_den(z, om, lat) * _th1_den(zb, om, lat)))
    val = val * np.exp(u_arr * _cfac(lat, om).real)
    out = np.real(val)
    if np.max(np.abs(np.imag(val))) > 1e-9 * np.max(np.abs(out)):
        raise ArithmeticError("e^h should be real")
    return float(out) if np.isscalar(u) else out


def exp_isigma(u, w: float, fam):
    """Unitary factor e^{i sigma(u,w)} of gamma_u."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat)
    u_arr = np.asarray(u, dtype=float)
    z = u_arr + 1j * w
    zb = u_arr - 1j * w
    i = _den_index(lat)
    val = (-1j * theta_grid(i, (z - om) / 2, lat) * theta_grid(1, (zb + om) / 2, lat)
           / (_th1_den(z, om, lat) * theta_grid(i, (zb - om) / 2, lat)))
    val = val * np.exp(1j * w * _cfac(lat, om))
    return complex(val) if np.isscalar(u) else val


def w1(w: float, fam) -> complex:
    """Infinitesimal rotation coefficient W1(w); W(w) = conj(W1(w))."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat)
    i = _den_index(lat)
    den = theta_grid(1, 1j * w, lat)
    # theta1(i w) vanishes mid-band at w = pi*lam on rectangular lattices
    if abs(den) < _POLE_TOL:
        raise PoleProximity(f"W1 pole: theta1(i w) ~ 0 at w = {w}")
    val = (1j * theta_grid(1, 0.0, lat, 1) * theta_grid(i, om - 1j * w, lat)
           / (2 * theta_grid(i, om, lat) * den))
    return complex(val * np.exp(1j * w * _cfac(lat, om)))


def dlog_gamma_u(u, w: float, fam):
    """(h + i sigma)_u = d/dz log gamma_u, by theta log-derivatives."""
    lat, om = fam.lattice, fam.omega
    z = np.asarray(u, dtype=complex) + 1j * w
    i = _den_index(lat)
    val = (theta_grid(i, (z - om) / 2, lat, 1) / theta_grid(i, (z - om) / 2, lat)
           - theta_grid(1, (z + om) / 2, lat, 1) / _th1_den(z, om, lat)
           + _cfac(lat, om))
    return complex(val) if np.isscalar(u) else val


def dlog_w1(w: float, fam) -> complex:
    """d/dw log W1(w), by theta log-derivatives."""
    lat, om = fam.lattice, fam.omega
    _check_w(w, lat)
    i = _den_index(lat)
    val = (-1j * theta_grid(i, om - 1j * w, lat, 1) / theta_grid(i, om - 1j * w, lat)
           - 1j * theta_grid(1, 1j * w, lat, 1) / theta_grid(1, 1j * w, lat)
           + 1j * _cfac(lat, om))
    return complex(val)


def frame_data(u: float, w: float, fam) -> CurveSample:
    return CurveSample(
        u=float(u), w=float(w),
        gamma=gamma(u, w, fam),
        gamma_u=gamma_u(u, w, fam),
        expH=exp_h(u, w, fam),
        expIsigma=exp_isigma(u, w, fam),
        W1=w1(w, fam),
    )


def radius(fam) -> float:
    """R(omega) = 2 td(omega)^2 / (theta1'(0) theta1(2 omega))."""
    lat, om = fam.lattice, fam.omega
    i = _den_index(lat)
    r = 2 * theta_grid(i, om, lat) ** 2 / (
        theta_grid(1, 0.0, lat, 1) * theta_grid(1, 2 * om, lat))
    return _real(r, "R(omega)")


# ---------------------------------------------------------------------------
# hyperbolic elastica diagnostics


def _standardizing_rotation(w: float, fam) -> complex:
    W1 = w1(w, fam)
    return -abs(W1) / (1j * W1)


def hyperbolic_standardize(us, w: float, fam):
    """Rotate gamma(., w) so its rotation axis is the ideal boundary of H^2."""
    rot = _standardizing_rotation(w, fam)
    return rot * np.asarray(gamma(np.asarray(us, dtype=float), w, fam))


def hyperbolic_speed(us, w: float, fam):
    """|gamma~_u|/Im(gamma~) on a u-grid; constant equal to a = 2|W1(w)|."""
    rot = _standardizing_rotation(w, fam)
    g = rot * gamma(np.asarray(us, dtype=float), w, fam)
    gu = rot * gamma_u(np.asarray(us, dtype=float), w, fam)
    return np.abs(gu) / np.imag(g)


def kappa_hyp(u, w: float, fam):
    """Hyperbolic curvature sigma~_u / a + cos(sigma~) of the standardized curve."""
    rot = _standardizing_rotation(w, fam)
    a = 2 * abs(w1(w, fam))
    sig_u = np.imag(dlog_gamma_u(u, w, fam))
    q = rot * exp_isigma(np.asarray(u, dtype=float), w, fam)
    return sig_u / a + np.real(q)


def elastica_constants(w: float, fam, n_grid: int = 200, step: float = 1e-3) -> ElasticaConstants:
    """Fit the quartic tangent ODE of the standardized curve on a u-grid.

    Lambda comes from the closed form (d/dw log W1)/a; mu is fitted pointwise
    from the ODE with Q_s = (dQ/du)/a by central differences, then averaged.
    """
    a = 2 * abs(w1(w, fam))
    lam = dlog_w1(w, fam) / a
    rot = _standardizing_rotation(w, fam)
    us = np.linspace(0, 2 * np.pi, n_grid, endpoint=False)

    def q_of(u):
        return rot * exp_isigma(u, w, fam)

    q = q_of(us)
    # fourth-order central stencil: the quartic residual is quadratic in the
    # Q_s error, so a second-order stencil would dominate the ODE residual
    qs = (-q_of(us + 2 * step) + 8 * q_of(us + step)
          - 8 * q_of(us - step) + q_of(us - 2 * step)) / (12 * step) / a
    mu_pts = -(qs ** 2 + 0.25 * q ** 4 + np.conj(lam) * q ** 3 + lam * q + 0.25) / q ** 2
    mu = complex(np.mean(mu_pts))
    res = np.abs(qs ** 2 + 0.25 * q ** 4 + np.conj(lam) * q ** 3
                 + mu.real * q ** 2 + lam * q + 0.25)
    return ElasticaConstants(
        a=a,
        Lambda=lam,
        mu=mu.real,
        mu_imag=mu.imag,
        residual_max=float(np.max(res)),
        residual_mean=float(np.mean(res)),
        mu_std=float(np.std(mu_pts)),
    )


# ---------------------------------------------------------------------------
# the omega -> 0 limit family (cylinder-tangent case)


def gamma_hat(u, w: float, lat: Lattice):
    """Limit curve: linear term + 2i td(0)^2 th1'(z/2) / (th1'(0)^2 th1(z/2)).

    The linear term vanishes exactly when td''(0) = 0, i.e. on the rhombic
    lattice at lambda0, making the curves 2*pi-periodic.
    """
    _check_w(w, lat, mirrored=True)
    i = _den_index(lat)
    z = np.asarray(u, dtype=complex) + 1j * w
    t1p0 = theta_grid(1, 0.0, lat, 1)
    lin = -1j * theta_grid(i, 0.0, lat, 2) * theta_grid(i, 0.0, lat) / t1p0 ** 2 * z
    th1h = theta_grid(1, z / 2, lat)
    if np.min(np.abs(th1h)) < _POLE_TOL:
        raise PoleProximity("theta1(z/2) too close to zero")
    main = 2j * theta_grid(i, 0.0, lat) ** 2 * theta_grid(1, z / 2, lat, 1) / (
        t1p0 ** 2 * th1h)
    val = lin + main
    return complex(val) if np.isscalar(u) else val


def gamma_hat_u(u, w: float, lat: Lattice):
    """d(gamma_hat)/du by theta log-derivatives (the linear slope plus the
    derivative of th1'(z/2)/th1(z/2))."""
    _check_w(w, lat, mirrored=True)
    i = _den_index(lat)
    z = np.asarray(u, dtype=complex) + 1j * w
    t1p0 = theta_grid(1, 0.0, lat, 1)
    slope = -1j * theta_grid(i, 0.0, lat, 2) * theta_grid(i, 0.0, lat) / t1p0 ** 2
    th1h = theta_grid(1, z / 2, lat)
    if np.min(np.abs(th1h)) < _POLE_TOL:
        raise PoleProximity("theta1(z/2) too close to zero")
    dd = (theta_grid(1, z / 2, lat, 2) * th1h - theta_grid(1, z / 2, lat, 1) ** 2) / th1h ** 2
    val = slope + 1j * theta_grid(i, 0.0, lat) ** 2 / t1p0 ** 2 * dd
    return complex(val) if np.isscalar(u) else val


def w_hat(w: float, lat: Lattice) -> float:
    """W^(w) = i th1'(0) td(iw) / (2 td(0) th1(iw)); real valued."""
    _check_w(w, lat)
    i = _den_index(lat)
    val = (1j * theta_grid(1, 0.0, lat, 1) * theta_grid(i, 1j * w, lat)
           / (2 * theta_grid(i, 0.0, lat) * theta_grid(1, 1j * w, lat)))
    return _real(val, "W^(w)")


def limit_d(w: float, lat: Lattice) -> complex:
    """d(w) = td'(iw)/td(iw) - i w td''(0)/td(0); purely imaginary on rhombic."""
    _check_w(w, lat)
    i = _den_index(lat)
    return complex(theta_grid(i, 1j * w, lat, 1) / theta_grid(i, 1j * w, lat)
                   - 1j * w * theta_grid(i, 0.0, lat, 2) / theta_grid(i, 0.0, lat))


def limit_r(w: float, lat: Lattice) -> float:
    """r(w) = td(0) td(iw) / (th1'(0) th1(iw)) * d(w); real valued."""
    _check_w(w, lat)
    i = _den_index(lat)
    val = (theta_grid(i, 0.0, lat) * theta_grid(i, 1j * w, lat)
           / (theta_grid(1, 0.0, lat, 1) * theta_grid(1, 1j * w, lat))
           * limit_d(w, lat))
    return _real(val, "r(w)")


def limit_data(u: float, w: float, lat: Lattice) -> LimitCurveSample:
    return LimitCurveSample(
        u=float(u), w=float(w),
        gamma_hat=gamma_hat(u, w, lat),
        W_hat=w_hat(w, lat),
        r=limit_r(w, lat),
        d=limit_d(w, lat),
    )
