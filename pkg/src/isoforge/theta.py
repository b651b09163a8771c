"""Jacobi theta functions on rectangular and rhombic lattices.

Conventions follow Whittaker & Watson: with nome q = e^{i pi tau},

    theta1(z) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1)z)
    theta2(z) = 2 sum_{n>=0} q^{(n+1/2)^2} cos((2n+1)z)
    theta3(z) = 1 + 2 sum_{n>=1} q^{n^2} cos(2nz)
    theta4(z) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2nz)

All four are entire, pi-(anti)periodic and pi*tau-quasiperiodic.  Two lattice
families appear: rectangular tau = i*lambda (q real in (0,1)) and rhombic
tau = 1/2 + i*lambda (q purely imaginary).  Derivatives are obtained by
term-wise differentiation; the truncation order is certified on the strip
|Im z| <= H = 2*pi*lambda by the tail bound 2|q|^{N^2} e^{2NH} (including the
polynomial factors introduced by differentiating twice).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidLattice, StripExceeded

_MAX_TERMS = 400


@dataclass(frozen=True)
class Lattice:
    """Period lattice tau with certified theta-series truncation.

    kind is "rectangular" (tau = i*lam) or "rhombic" (tau = 1/2 + i*lam).
    tol is the absolute truncation bound guaranteed on |Im z| <= strip_height.
    """

    kind: str
    lam: float
    tol: float = 1e-12

    def __post_init__(self):
        if self.kind not in ("rectangular", "rhombic"):
            raise InvalidLattice(f"unknown lattice kind {self.kind!r}")
        if not self.lam > 0:
            raise InvalidLattice(f"lambda must be positive, got {self.lam}")

    @property
    def tau(self) -> complex:
        if self.kind == "rhombic":
            return 0.5 + 1j * self.lam
        return 1j * self.lam

    @property
    def nome(self) -> complex:
        return cmath.exp(1j * cmath.pi * self.tau)

    @property
    def strip_height(self) -> float:
        # downstream arguments are (u +- i w +- omega)/2 with w < 2*pi*lam,
        # plus the full-width arguments omega - i w; cover both.
        return 2 * np.pi * self.lam

    @cached_property
    def truncation(self) -> int:
        absq = abs(self.nome)
        h = self.strip_height
        for n in range(1, _MAX_TERMS):
            # first omitted term of each series family, with the (2n+1)^2
            # factor from two term-wise differentiations
            half = 2 * absq ** ((n + 0.5) ** 2) * np.exp((2 * n + 1) * h) * (2 * n + 1) ** 2
            whole = 2 * absq ** (n * n) * np.exp(2 * n * h) * (2 * n) ** 2
            if half + whole < self.tol:
                return n
        raise InvalidLattice(
            f"cannot certify tol={self.tol} on strip {h} with {_MAX_TERMS} terms"
        )


def rhombic(lam: float, tol: float = 1e-12) -> Lattice:
    return Lattice("rhombic", lam, tol)


def rectangular(lam: float, tol: float = 1e-12) -> Lattice:
    return Lattice("rectangular", lam, tol)


@dataclass(frozen=True)
class ThetaValue:
    value: complex
    d1: complex
    d2: complex


def _check_strip(z, lat: Lattice):
    im = np.max(np.abs(np.imag(np.asarray(z, dtype=complex))))
    if im > lat.strip_height + 1e-12:
        raise StripExceeded(
            f"|Im z| = {im:.6g} exceeds certified strip {lat.strip_height:.6g}"
        )


def theta_grid(i: int, z, lat: Lattice, order: int = 0):
    """Vectorized theta_i (or its z-derivative of given order) on array z."""
    if i not in (1, 2, 3, 4):
        raise ValueError(f"theta index must be 1..4, got {i}")
    if order not in (0, 1, 2):
        raise ValueError(f"derivative order must be 0..2, got {order}")
    z = np.asarray(z, dtype=complex)
    _check_strip(z, lat)
    shape = z.shape
    zf = z.ravel()
    n = np.arange(lat.truncation)
    iptau = 1j * np.pi * lat.tau
    if i in (1, 2):
        m = 2 * n + 1
        coef = 2 * np.exp(iptau * (n + 0.5) ** 2)
        if i == 1:
            coef = coef * (-1.0) ** n
        mz = np.multiply.outer(m, zf)
        s, c = np.sin(mz), np.cos(mz)
        if i == 1:
            basis = {0: s, 1: c, 2: -s}[order]
        else:
            basis = {0: c, 1: -s, 2: -c}[order]
        out = (coef * m ** order) @ basis
    else:
        m = 2 * n
        coef = 2 * np.exp(iptau * n ** 2)
        coef[0] = 1.0
        if i == 4:
            coef = coef * (-1.0) ** n
        mz = np.multiply.outer(m, zf)
        s, c = np.sin(mz), np.cos(mz)
        basis = {0: c, 1: -s, 2: -c}[order]
        out = (coef * m ** order) @ basis
    return out.reshape(shape)


def theta(i: int, z: complex, lat: Lattice) -> ThetaValue:
    """theta_i(z) with first and second z-derivatives."""
    return ThetaValue(
        value=complex(theta_grid(i, z, lat, 0)),
        d1=complex(theta_grid(i, z, lat, 1)),
        d2=complex(theta_grid(i, z, lat, 2)),
    )


# quasi-period multipliers for z -> z + pi*tau: theta_i(z + pi*tau) = m_i(z) theta_i(z)
def _quasi_factor(i: int, z: complex, lat: Lattice) -> complex:
    base = cmath.exp(-2j * z) / lat.nome
    sign = -1.0 if i in (1, 4) else 1.0
    return sign * base


def quasiperiodicity_residual(i: int, z: complex, lat: Lattice) -> float:
    """|theta_i(z + pi*tau) - m_i(z) theta_i(z)| for the known multiplier m_i."""
    shifted = theta_grid(i, z + np.pi * lat.tau, lat)
    return float(abs(shifted - _quasi_factor(i, z, lat) * theta_grid(i, z, lat)))


def rhombic_conjugation_residual(i: int, z: complex, lat: Lattice) -> float:
    """|conj(theta_i(z)) - e^{-i pi/4} theta_i(conj z)| on a rhombic lattice (i = 1, 2)."""
    if lat.kind != "rhombic":
        raise InvalidLattice("conjugation symmetry requires a rhombic lattice")
    if i not in (1, 2):
        raise ValueError("conjugation symmetry holds for theta1, theta2 only")
    lhs = np.conj(theta_grid(i, z, lat))
    rhs = cmath.exp(-1j * np.pi / 4) * theta_grid(i, np.conj(z), lat)
    return float(abs(lhs - rhs))


def addition_formula_residual(x: complex, y: complex, lat: Lattice) -> float:
    """Residual of the two quadratic theta addition formulas at (x, y)."""
    t1 = lambda z: theta_grid(1, z, lat)
    t2 = lambda z: theta_grid(2, z, lat)
    t20 = t2(0.0)
    r1 = t20 ** 2 * t1(x + y) * t1(x - y) - (t1(x) ** 2 * t2(y) ** 2 - t2(x) ** 2 * t1(y) ** 2)
    r2 = t20 ** 2 * t2(x + y) * t2(x - y) - (t2(x) ** 2 * t2(y) ** 2 - t1(x) ** 2 * t1(y) ** 2)
    return float(max(abs(r1), abs(r2)))
