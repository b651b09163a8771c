"""Quaternion algebra and the complex-plane embedding into span{j, k}."""

import numpy as np
import pytest

from isoforge import quat
from isoforge.errors import ZeroQuaternion

RNG = np.random.default_rng(5)

I = quat.Quaternion(0, 1, 0, 0)
J = quat.Quaternion(0, 0, 1, 0)
K = quat.Quaternion(0, 0, 0, 1)


def _random_quat():
    return quat.Quaternion(*RNG.normal(size=4))


def test_hamilton_table():
    assert (I * J).array().tolist() == K.array().tolist()
    assert (J * K).array().tolist() == I.array().tolist()
    assert (K * I).array().tolist() == J.array().tolist()
    for e in (I, J, K):
        assert np.allclose((e * e).array(), [-1, 0, 0, 0])


def test_inverse():
    for _ in range(5):
        q = _random_quat()
        assert np.allclose((q * q.inverse()).array(), [1, 0, 0, 0], atol=1e-13)


def test_zj_is_j_zbar():
    """(a + b i) j = j (a - b i) in the embedded complex plane."""
    for _ in range(5):
        a, b = RNG.normal(size=2)
        z = quat.Quaternion(a, b, 0, 0)
        zbar = quat.Quaternion(a, -b, 0, 0)
        assert np.allclose((z * J).array(), (J * zbar).array(), atol=1e-14)


def test_embed_cj():
    assert quat.embed_cj(1).array().tolist() == [0, 1, 0]
    assert quat.embed_cj(1j).array().tolist() == [0, 0, 1]
    assert quat.embed_cj(2 - 3j).array().tolist() == [0, 2, -3]


def test_sandwich_identity_and_rotation():
    x = quat.Vec3(0.3, -0.7, 1.1)
    assert np.allclose(quat.sandwich(quat.Quaternion.one(), x).array(),
                       x.array())
    # q = cos(pi/4) + sin(pi/4) k: q^{-1} j q = i (rotation by -pi/2 about k
    # under the q^{-1} X q convention, pinned by the direct product)
    q = quat.Quaternion(np.cos(np.pi / 4), 0, 0, np.sin(np.pi / 4))
    out = quat.sandwich(q, quat.Vec3(0, 1, 0))
    assert np.allclose(out.array(), [1, 0, 0], atol=1e-14)


def test_sandwich_isometry_and_axis_fixed():
    for _ in range(5):
        q = _random_quat().normalized()
        x = quat.Vec3(*RNG.normal(size=3))
        out = quat.sandwich(q, x)
        assert abs(out.norm() - x.norm()) < 1e-13
        axis = quat.Vec3(q.x, q.y, q.z)
        if axis.norm() > 1e-9:
            fixed = quat.sandwich(q, axis)
            assert np.allclose(fixed.array(), axis.array(), atol=1e-12)


def test_norm_multiplicative():
    for _ in range(5):
        a, b = _random_quat(), _random_quat()
        assert abs((a * b).norm() - a.norm() * b.norm()) < 1e-12


def test_commutator_is_twice_cross_product():
    for _ in range(5):
        xv, yv = RNG.normal(size=3), RNG.normal(size=3)
        x = np.concatenate([[0.0], xv])
        y = np.concatenate([[0.0], yv])
        comm = quat.qmul(x, y) - quat.qmul(y, x)
        assert np.allclose(comm[1:], 2 * np.cross(xv, yv), atol=1e-13)
        assert abs(comm[0]) < 1e-13


def test_qexp_k():
    a = 0.37
    q = quat.qexp_k(a)
    assert np.allclose(q, [np.cos(a), 0, 0, np.sin(a)])
    assert abs(quat.qnorm2(q) - 1.0) < 1e-15


def test_cj_array_matches_embed():
    zs = RNG.normal(size=4) + 1j * RNG.normal(size=4)
    arr = quat.cj(zs)
    for z, row in zip(zs, arr):
        assert np.allclose(row, quat.embed_cj(z).array())


def test_broadcasting_sandwich():
    q = quat.qnormalize(RNG.normal(size=4))
    vs = RNG.normal(size=(7, 3))
    out = quat.qsandwich(q, vs)
    for v, o in zip(vs, out):
        single = quat.sandwich(quat.Quaternion.from_array(q),
                               quat.Vec3.from_array(v))
        assert np.allclose(o, single.array(), atol=1e-13)


def test_zero_quaternion_guards():
    zero = quat.Quaternion(0, 0, 0, 0)
    with pytest.raises(ZeroQuaternion):
        zero.inverse()
    with pytest.raises(ZeroQuaternion):
        zero.normalized()


def test_renormalization_stability():
    q = _random_quat().normalized()
    for _ in range(100):
        q = q.normalized()
    assert abs(q.norm() - 1.0) < 1e-14
