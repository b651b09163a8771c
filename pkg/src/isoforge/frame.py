"""Rotation frame Phi(v) on unit quaternions, monodromy, and torus closing.

The frame solves

    Phi'(v) = sqrt(1 - w'(v)^2) W1(w(v)) k  *  Phi(v),

where the coefficient is a quaternion in span{j, k}: with W1 = w_r + i w_i
the generator is sqrt(1 - w'^2) (w_r k - w_i j), and the signed root comes
from the reparametrization spec's recorded branch, never from |.|.

Integration uses a hand-rolled Dormand-Prince 5(4) embedded pair with
per-step projection of Phi back to the unit sphere; output is produced at
prescribed v-nodes by forcing steps to land on them.  W1 along the
trajectory is evaluated through a Chebyshev interpolant in w (machine
precision on the spec's w-range), which keeps the right-hand side cheap
enough for the torus-closing parameter search.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace

import numpy as np
from numpy.polynomial.chebyshev import Chebyshev
from scipy.optimize import brentq

from . import curvefamily
from .errors import DegenerateRotation, NoBracket, SpecInvalid, StepFailure
from .quat import Quaternion, Vec3, qmul, qsandwich
from .reparam import ReparamSpec


@dataclass(frozen=True)
class FrameTrajectory:
    v: np.ndarray
    phi: np.ndarray  # (n, 4) unit quaternions
    stats: dict


@dataclass(frozen=True)
class Monodromy:
    M: Quaternion
    axis: Vec3
    theta: float


# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array([5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
                187 / 2100, 1 / 40])


def _adaptive_rk(f, nodes, y0, step_tol, renormalize=True):
    """Embedded-pair integration of y' = f(v, y) with output at the nodes."""
    nodes = np.asarray(nodes, dtype=float)
    span = nodes[-1] - nodes[0]
    y = np.array(y0, dtype=float)
    out = [y.copy()]
    h = span / 128
    n_steps = n_rejected = 0
    drift = 0.0
    for va, vb in zip(nodes[:-1], nodes[1:]):
        v = va
        while vb - v > 1e-14 * span:
            ht = min(h, vb - v)
            k = np.empty((7,) + y.shape)
            k[0] = f(v, y)
            for i in range(1, 7):
                yi = y + ht * sum(a * k[j] for j, a in enumerate(_A[i]))
                k[i] = f(v + _C[i] * ht, yi)
            y5 = y + ht * (_B5 @ k)
            y4 = y + ht * (_B4 @ k)
            err = np.max(np.abs(y5 - y4))
            if not np.isfinite(err):
                raise StepFailure(f"non-finite right-hand side near v = {v}")
            tol = step_tol * max(1.0, np.max(np.abs(y)))
            if err <= tol:
                v += ht
                y = y5
                n_steps += 1
                if renormalize:
                    norm = np.sqrt(np.sum(y * y))
                    drift = max(drift, abs(norm - 1.0))
                    y = y / norm
            else:
                n_rejected += 1
            h = ht * min(5.0, max(0.2, 0.9 * (tol / max(err, 1e-300)) ** 0.2))
            if h < 1e-13 * span:
                raise StepFailure(f"step size underflow at v = {v}")
        out.append(y.copy())
    stats = {"n_steps": n_steps, "n_rejected": n_rejected,
             "prenorm_drift": drift}
    return np.array(out), stats


def cheb_interpolant(func, lo: float, hi: float, deg: int = 96):
    """Chebyshev interpolant of a scalar real function on [lo, hi]."""
    return Chebyshev.interpolate(
        lambda xs: np.array([func(float(x)) for x in np.atleast_1d(xs)]),
        deg, domain=[lo, hi])


def _w1_interpolant(fam, w_lo: float, w_hi: float, deg: int = 96):
    """Chebyshev interpolant of W1 on [w_lo, w_hi] (machine precision)."""
    re = cheb_interpolant(lambda w: curvefamily.w1(w, fam).real, w_lo, w_hi, deg)
    im = cheb_interpolant(lambda w: curvefamily.w1(w, fam).imag, w_lo, w_hi, deg)
    return lambda w: re(w) + 1j * im(w)


def generator(spec: ReparamSpec, fam, w1_of_w=None):
    """The coefficient function v -> quaternion A(v) = root(v) W1(w(v)) k."""
    if w1_of_w is None:
        vs = np.linspace(0.0, spec.period, 1025)
        ws = np.asarray(spec.w(vs), dtype=float)
        w_lo, w_hi = float(np.min(ws)), float(np.max(ws))
        if w_hi - w_lo < 1e-12:  # constant w: no interpolation needed
            W1 = curvefamily.w1(w_lo, fam)
            w1_of_w = lambda w: W1
        else:
            w1_of_w = _w1_interpolant(fam, w_lo, w_hi)

    def a_of_v(v):
        W1 = w1_of_w(spec.w(v))
        root = spec.signed_root(v)
        return np.array([0.0, 0.0, -root * W1.imag, root * W1.real])

    return a_of_v


def integrate(spec: ReparamSpec, fam, periods: int = 1,
              n_per_period: int = 256, step_tol: float = 1e-12,
              v_nodes=None) -> FrameTrajectory:
    """Integrate Phi' = A(v) Phi from Phi(0) = 1 over the given periods.

    If v_nodes is given (increasing, starting at 0) output is produced
    there instead of on the uniform grid.
    """
    if not (spec.period > 0):
        raise SpecInvalid("spec period must be positive")
    a_of_v = generator(spec, fam)

    def rhs(v, y):
        return qmul(a_of_v(v), y)

    if v_nodes is not None:
        nodes = np.asarray(v_nodes, dtype=float)
        if nodes[0] != 0.0 or np.any(np.diff(nodes) <= 0):
            raise SpecInvalid("v_nodes must be strictly increasing from 0")
    else:
        nodes = np.linspace(0.0, periods * spec.period, periods * n_per_period + 1)
    phi, stats = _adaptive_rk(rhs, nodes, np.array([1.0, 0.0, 0.0, 0.0]),
                              step_tol)
    return FrameTrajectory(v=nodes, phi=phi, stats=stats)


def monodromy(traj: FrameTrajectory) -> Monodromy:
    """M = Phi(0)^{-1} Phi(V) with angle folded into [0, pi]."""
    m = traj.phi[-1].copy()
    if m[0] < 0:  # quaternion double cover: canonicalize scalar part >= 0
        m = -m
    theta = 2.0 * np.arccos(np.clip(m[0], -1.0, 1.0))
    if theta < 1e-10:
        raise DegenerateRotation(
            "monodromy is the identity: the piece closes after one period")
    axis = m[1:] / np.linalg.norm(m[1:])
    return Monodromy(M=Quaternion.from_array(m), axis=Vec3.from_array(axis),
                     theta=float(theta))


def extend_by_rotation(piece, mono: Monodromy, k: int):
    """Extend a one-period piece to k periods: f(u, v + jV) = M^{-j} f M^{j}.

    The input surface must span exactly one period [0, V]; the result spans
    [0, kV] with the shared seam columns dropped.  k <= 1 returns the piece.
    """
    if k <= 1:
        return piece
    m = mono.M.array()
    v0 = np.asarray(piece.v, dtype=float)
    period = v0[-1] - v0[0]
    vs = [v0]
    fields = {name: [np.asarray(getattr(piece, name), dtype=float)]
              for name in ("points", "fu", "fv", "n")}
    eh = [np.asarray(piece.expH, dtype=float)]
    q = np.array([1.0, 0.0, 0.0, 0.0])
    for j in range(1, k):
        q = qmul(q, m)
        vs.append(v0[1:] + j * period)
        for name in fields:
            fields[name].append(qsandwich(q, fields[name][0][:, 1:, :]))
        eh.append(eh[0][:, 1:])
    return dc_replace(
        piece,
        v=np.concatenate(vs),
        expH=np.concatenate(eh, axis=1),
        **{name: np.concatenate(parts, axis=1) for name, parts in fields.items()},
    )


def close_torus(template, fam, target_angle: float,
                bracket=(0.02, None), n_scan: int = 17,
                step_tol: float = 1e-12):
    """Tune the free amplitude A so the monodromy angle hits target_angle.

    template is a callable A -> ReparamSpec (e.g. an analytic sin family with
    everything but the amplitude fixed).  A coarse scan locates a sign change
    of theta(A) - target_angle, then Brent's method refines it.  Returns
    (tuned spec, achieved theta).
    """
    lo, hi = bracket
    if hi is None:
        hi = 0.9 * 2 * np.pi * fam.lattice.lam / 2  # conservative band bound

    def theta_of(amp):
        spec = template(amp)
        traj = integrate(spec, fam, periods=1, n_per_period=8,
                         step_tol=step_tol)
        return monodromy(traj).theta

    amps = np.linspace(lo, hi, n_scan)
    vals = np.array([theta_of(a) - target_angle for a in amps])
    sign = np.sign(vals)
    idx = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(idx) == 0:
        raise NoBracket(
            f"theta(A) does not cross {target_angle:.6g} on [{lo}, {hi}]; "
            f"observed range [{np.min(vals) + target_angle:.6g}, "
            f"{np.max(vals) + target_angle:.6g}]"
        )
    i = idx[0]
    amp = brentq(lambda a: theta_of(a) - target_angle, amps[i], amps[i + 1],
                 xtol=1e-13, rtol=8.9e-16)
    achieved = theta_of(amp)
    return template(amp), achieved
