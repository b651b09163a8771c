"""Quaternion algebra: R^3 as imaginary quaternions, C embedded in span{j,k}.

Hamilton convention: i*j = k, j*k = i, k*i = j, i^2 = j^2 = k^2 = -1.
A complex number z = a + b*i acts on the j,k-plane via z*j = a*j + b*k,
and z*j = j*conj(z).

Array helpers operate on trailing axes: quaternions are (..., 4) in
(w, x, y, z) order, vectors (..., 3) in (i, j, k) components.  They broadcast,
which is what the surface assembly uses; the scalar dataclass API wraps them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ZeroQuaternion

# ---------------------------------------------------------------------------
# array core


def qmul(a, b):
    """Hamilton product of quaternion arrays (..., 4), broadcasting."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, av = a[..., 0], a[..., 1:]
    bw, bv = b[..., 0], b[..., 1:]
    w = aw * bw - np.sum(av * bv, axis=-1)
    v = (aw[..., None] * bv + bw[..., None] * av + np.cross(av, bv))
    return np.concatenate([w[..., None], v], axis=-1)


def qconj(a):
    a = np.asarray(a, dtype=float)
    out = a.copy()
    out[..., 1:] *= -1
    return out


def qnorm2(a):
    a = np.asarray(a, dtype=float)
    return np.sum(a * a, axis=-1)


def qinv(a):
    n2 = qnorm2(a)
    if np.any(n2 == 0):
        raise ZeroQuaternion("cannot invert the zero quaternion")
    return qconj(a) / n2[..., None]


def qnormalize(a):
    n = np.sqrt(qnorm2(a))
    if np.any(n == 0):
        raise ZeroQuaternion("cannot normalize the zero quaternion")
    return np.asarray(a, dtype=float) / n[..., None]


def qsandwich(q, v):
    """q^{-1} X q on vector arrays X (..., 3); broadcasts q against v."""
    q = np.asarray(q, dtype=float)
    v = np.asarray(v, dtype=float)
    x = np.concatenate([np.zeros(v.shape[:-1] + (1,)), v], axis=-1)
    out = qmul(qmul(qinv(q), x), q)
    return out[..., 1:]


def qexp_k(angle):
    """exp(angle * k) as a quaternion array."""
    angle = np.asarray(angle, dtype=float)
    z = np.zeros_like(angle)
    return np.stack([np.cos(angle), z, z, np.sin(angle)], axis=-1)


def cj(z):
    """(a + b i) j = a j + b k as a vector array; z complex array -> (..., 3)."""
    z = np.asarray(z, dtype=complex)
    return np.stack([np.zeros(z.shape), z.real, z.imag], axis=-1)


# ---------------------------------------------------------------------------
# scalar API


@dataclass(frozen=True)
class Quaternion:
    w: float
    x: float
    y: float
    z: float

    @staticmethod
    def one() -> "Quaternion":
        return Quaternion(1.0, 0.0, 0.0, 0.0)

    @staticmethod
    def from_array(a) -> "Quaternion":
        return Quaternion(*(float(c) for c in np.asarray(a, dtype=float)))

    def array(self):
        return np.array([self.w, self.x, self.y, self.z])

    def conj(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm(self) -> float:
        return float(np.sqrt(qnorm2(self.array())))

    def inverse(self) -> "Quaternion":
        return Quaternion.from_array(qinv(self.array()))

    def normalized(self) -> "Quaternion":
        return Quaternion.from_array(qnormalize(self.array()))

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return mul(self, other)

    def __neg__(self) -> "Quaternion":
        return Quaternion(-self.w, -self.x, -self.y, -self.z)


@dataclass(frozen=True)
class Vec3:
    x: float
    y: float
    z: float

    @staticmethod
    def from_array(a) -> "Vec3":
        return Vec3(*(float(c) for c in np.asarray(a, dtype=float)))

    def array(self):
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return float(np.linalg.norm(self.array()))


def mul(a: Quaternion, b: Quaternion) -> Quaternion:
    return Quaternion.from_array(qmul(a.array(), b.array()))


def embed_cj(z: complex) -> Vec3:
    return Vec3.from_array(cj(complex(z))[()])


def sandwich(q: Quaternion, X: Vec3) -> Vec3:
    return Vec3.from_array(qsandwich(q.array(), X.array()))
