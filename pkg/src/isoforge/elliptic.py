"""Special lattice parameters and the Lame/Riccati coefficient functions.

On a rhombic lattice tau = 1/2 + i*lambda the building blocks are

    U(u)  = -theta1'(0)/(2 theta2(w)) * theta1(u+w)/theta2(u) * e^{-u c},
    U1(u) = +theta1'(0)/(2 theta2(w)) * theta1(u-w)/theta2(u) * e^{+u c},

with w = omega and c = theta2'(omega)/theta2(omega).  The closed-curve theory
lives at the *critical* omega where theta2'(omega) = 0 (so c = 0); such an
omega exists in (0, pi/4) iff lambda < lambda0 ~ 0.354729892522, the unique
zero of theta2''(0 | 1/2 + i*lambda).

Although the thetas are complex on a rhombic lattice, the conjugation symmetry
conj(theta_{1,2}(z)) = e^{-i pi/4} theta_{1,2}(conj z) makes U, U1 and all the
derived constants below real for real u; we verify the imaginary parts and
return reals.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import NoBracket, NoCriticalOmega, PoleProximity, InvalidLattice
from .theta import Lattice, rhombic, theta_grid

_REAL_TOL = 1e-9


def _real(z, what: str) -> float:
    z = complex(z)
    scale = max(1.0, abs(z))
    if abs(z.imag) > _REAL_TOL * scale:
        raise ArithmeticError(f"{what} should be real, got {z}")
    return z.real


@dataclass(frozen=True)
class CriticalParams:
    """Rhombic lattice together with the critical omega (zero of theta2')."""

    lattice: Lattice
    omega: float
    residual: float


@dataclass(frozen=True)
class CoeffSample:
    u: float
    U: float
    U1: float
    U2: float
    Uprime: float
    U1prime: float


@dataclass(frozen=True)
class CubicQ3:
    """Q3(s) = c3 s^3 + c2 s^2 + c1 s + c0 with its factorized-form roots.

    One root is real; the other two form a complex-conjugate pair (the
    factorized form pairs theta3/theta4 values that rhombic conjugation
    exchanges).
    """

    c3: float
    c2: float
    c1: float
    c0: float
    roots: tuple

    def __call__(self, s):
        return ((self.c3 * s + self.c2) * s + self.c1) * s + self.c0


def theta2_logdd0(lam: float) -> float:
    """theta2''(0)/theta2(0) on the rhombic lattice 1/2 + i*lam (a real number)."""
    lat = rhombic(lam)
    return _real(theta_grid(2, 0.0, lat, 2) / theta_grid(2, 0.0, lat, 0),
                 "theta2''(0)/theta2(0)")


def solve_lambda0(lo: float = 0.1, hi: float = 0.6) -> float:
    """The unique lambda with theta2''(0 | 1/2 + i*lambda) = 0."""
    flo, fhi = theta2_logdd0(lo), theta2_logdd0(hi)
    if flo * fhi > 0:
        raise NoBracket(f"theta2''(0) does not change sign on ({lo}, {hi})")
    return brentq(theta2_logdd0, lo, hi, xtol=1e-14, rtol=8.9e-16)


def solve_critical_omega(lat: Lattice, scan_step: float = 1e-3) -> CriticalParams:
    """The unique omega in (0, pi/4) with theta2'(omega | tau) = 0.

    Exists iff lambda < lambda0; otherwise NoCriticalOmega is raised.
    """
    if lat.kind != "rhombic":
        raise InvalidLattice("critical omega is defined for rhombic lattices")

    def g(w):
        return _real(theta_grid(2, w, lat, 1) / theta_grid(2, w, lat, 0),
                     "theta2'/theta2 at real omega")

    grid = np.arange(scan_step, np.pi / 4, scan_step)
    vals = np.real(theta_grid(2, grid, lat, 1) / theta_grid(2, grid, lat, 0))
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(idx) == 0:
        raise NoCriticalOmega(
            f"theta2' has no zero in (0, pi/4) at lambda={lat.lam} (lambda >= lambda0)"
        )
    i = idx[0]
    omega = brentq(g, grid[i], grid[i + 1], xtol=1e-15, rtol=8.9e-16)
    # Newton polish on theta2' itself
    for _ in range(3):
        d1 = theta_grid(2, omega, lat, 1)
        if abs(d1) < 1e-13:
            break
        omega -= (d1 / theta_grid(2, omega, lat, 2)).real
    residual = float(abs(theta_grid(2, omega, lat, 1)))
    return CriticalParams(lattice=lat, omega=float(omega), residual=residual)


# ---------------------------------------------------------------------------
# coefficient functions U, U1, U2


def _uu1_complex(u: float, lat: Lattice, omega: float):
    """Complex-valued (U, U', U1, U1') at u, general omega (exponential factors kept).

    The denominator theta is theta2 on rhombic lattices and theta4 on
    rectangular ones (the real reductions of the same complex formula).
    """
    i = 2 if lat.kind == "rhombic" else 4
    t2u = theta_grid(i, u, lat)
    if abs(t2u) < 1e-8:
        raise PoleProximity(f"theta{i}({u}) = {t2u} too close to zero")
    t2pu = theta_grid(i, u, lat, 1)
    k = -theta_grid(1, 0.0, lat, 1) / (2 * theta_grid(i, omega, lat))
    c = theta_grid(i, omega, lat, 1) / theta_grid(i, omega, lat)

    t1p, t1pd = theta_grid(1, u + omega, lat), theta_grid(1, u + omega, lat, 1)
    t1m, t1md = theta_grid(1, u - omega, lat), theta_grid(1, u - omega, lat, 1)
    ep, em = np.exp(-u * c), np.exp(u * c)

    U = k * t1p / t2u * ep
    Up = k * ep * (t1pd * t2u - t1p * t2pu) / t2u ** 2 - c * U
    U1 = -k * t1m / t2u * em
    U1p = -k * em * (t1md * t2u - t1m * t2pu) / t2u ** 2 + c * U1
    return U, Up, U1, U1p


def c1_at_critical(crit: CriticalParams) -> float:
    """The Lame constant C1 = U2(omega), via the closed form at critical omega."""
    lat, w = crit.lattice, crit.omega
    t1p0 = theta_grid(1, 0.0, lat, 1)
    t2w = theta_grid(2, w, lat)
    s = (theta_grid(1, w, lat) ** 2 / theta_grid(2, 0.0, lat) ** 2
         + theta_grid(4, w, lat) ** 2 / theta_grid(3, 0.0, lat) ** 2
         + theta_grid(3, w, lat) ** 2 / theta_grid(4, 0.0, lat) ** 2)
    return _real(t1p0 ** 2 / t2w ** 2 * s, "U2(omega)")


def lame_c1(lat: Lattice, omega: float, u_probe: float = 0.31) -> float:
    """C1 recovered from the Lame equation U''/U = C1 - 8 U U1 at a probe point.

    Works for any omega; used to cross-check the closed form at critical omega.
    U'' is taken by central differences of the analytic U'.
    """
    h = 1e-5
    u = omega + u_probe
    U, Up, U1, _ = _uu1_complex(u, lat, omega)
    _, up_p, _, _ = _uu1_complex(u + h, lat, omega)
    _, up_m, _, _ = _uu1_complex(u - h, lat, omega)
    upp = (up_p - up_m) / (2 * h)
    return _real(upp / U + 8 * U * U1, "Lame constant C1")


def coeffs(u: float, crit) -> CoeffSample:
    """(U, U1, U2, U', U1') at real u.

    Accepts critical rhombic parameters (closed-form Lame constant) or a
    general lattice + omega (constant recovered from the Lame equation at
    a probe point).
    """
    U, Up, U1, U1p = _uu1_complex(u, crit.lattice, crit.omega)
    if hasattr(crit, "residual"):
        c1 = c1_at_critical(crit)
    else:
        c1 = lame_c1(crit.lattice, crit.omega)
    U2 = c1 - 6 * U * U1
    return CoeffSample(
        u=u,
        U=_real(U, "U"),
        U1=_real(U1, "U1"),
        U2=_real(U2, "U2"),
        Uprime=_real(Up, "U'"),
        U1prime=_real(U1p, "U1'"),
    )


def radius(crit: CriticalParams) -> float:
    """R(omega) = 2 theta2(omega)^2 / (theta1'(0) theta1(2 omega)) = -1/U(omega)."""
    lat, w = crit.lattice, crit.omega
    r = 2 * theta_grid(2, w, lat) ** 2 / (theta_grid(1, 0.0, lat, 1)
                                          * theta_grid(1, 2 * w, lat))
    return _real(r, "R(omega)")


def coeffs_at_omega(crit: CriticalParams) -> CoeffSample:
    """Closed forms of the coefficient data at u = omega."""
    lat, w = crit.lattice, crit.omega
    t1p0 = theta_grid(1, 0.0, lat, 1)
    t2w2 = theta_grid(2, w, lat) ** 2
    U = _real(-0.5 * t1p0 * theta_grid(1, 2 * w, lat) / t2w2, "U(omega)")
    Up = _real(-0.5 * t1p0 * theta_grid(1, 2 * w, lat, 1) / t2w2, "U'(omega)")
    U1p = _real(0.5 * t1p0 ** 2 / t2w2, "U1'(omega)")
    return CoeffSample(u=w, U=U, U1=0.0, U2=c1_at_critical(crit),
                       Uprime=Up, U1prime=U1p)


def q3(crit: CriticalParams) -> CubicQ3:
    """The cubic Q3(s) = 2U1'(w)s^3 - U2(w)s^2 - 2U'(w)s - U(w)^2 with its roots."""
    lat, w = crit.lattice, crit.omega
    at = coeffs_at_omega(crit)
    r1 = complex(theta_grid(1, w, lat) ** 2 / theta_grid(2, 0.0, lat) ** 2)
    r2 = complex(theta_grid(3, w, lat) ** 2 / theta_grid(4, 0.0, lat) ** 2)
    r3 = complex(theta_grid(4, w, lat) ** 2 / theta_grid(3, 0.0, lat) ** 2)
    roots = tuple(sorted((r1, r2, r3), key=lambda z: (z.real, z.imag)))
    return CubicQ3(
        c3=2 * at.U1prime,
        c2=-at.U2,
        c1=-2 * at.Uprime,
        c0=-at.U ** 2,
        roots=roots,
    )


def g2g3(u0: float, crit: CriticalParams):
    """Weierstrass invariants of the quartic governing the planar u-curves.

    y^2 = -U1(u0)^2 x^4 + 2U1'(u0) x^3 - U2(u0) x^2 - 2U'(u0) x - U(u0)^2,
    written as c0 x^4 + 4c1 x^3 + 6c2 x^2 + 4c3 x + c4 for the classical
    g2 = c0 c4 - 4 c1 c3 + 3 c2^2 and
    g3 = c0 c2 c4 + 2 c1 c2 c3 - c2^3 - c0 c3^2 - c1^2 c4.
    Independent of u0.
    """
    s = coeffs(u0, crit)
    c0, c1, c2, c3, c4 = (-s.U1 ** 2, s.U1prime / 2, -s.U2 / 6, -s.Uprime / 2, -s.U ** 2)
    g2 = c0 * c4 - 4 * c1 * c3 + 3 * c2 ** 2
    g3 = c0 * c2 * c4 + 2 * c1 * c2 * c3 - c2 ** 3 - c0 * c3 ** 2 - c1 ** 2 * c4
    return g2, g3
