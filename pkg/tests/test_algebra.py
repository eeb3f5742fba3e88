import numpy as np
from numpy.testing import assert_allclose

from app.services.algebra import (
    ReducedQuaternion,
    VecField2,
    conj,
    quat_mul,
    sc,
    star,
    turn,
    vec,
)

E1 = ReducedQuaternion(0.0, 1.0, 0.0)
E2 = ReducedQuaternion(0.0, 0.0, 1.0)


def test_quat_mul_defining_relations():
    assert_allclose(quat_mul(E1, E1), [-1.0, 0.0, 0.0, 0.0])
    assert_allclose(quat_mul(E1, E2), [0.0, 0.0, 0.0, 1.0])
    assert_allclose(quat_mul(E2, E1), [0.0, 0.0, 0.0, -1.0])


def test_quat_mul_one_plus_e1_times_one_minus_e1():
    p = ReducedQuaternion(1.0, 1.0, 0.0)
    q = ReducedQuaternion(1.0, -1.0, 0.0)
    assert_allclose(quat_mul(p, q), [2.0, 0.0, 0.0, 0.0])


def test_quat_mul_broadcasts_over_fields():
    p = np.array([[1.0, 2.0], [0.0, 1.0], [0.0, 0.0]])
    out = quat_mul(p, E2)
    assert out.shape == (4, 2)
    assert_allclose(out[:, 1], [0.0, 0.0, 2.0, 1.0])


def test_star_swaps_components():
    assert star(VecField2(1.0, 0.0)) == VecField2(0.0, 1.0)
    assert star(VecField2(0.0, 0.0)) == VecField2(0.0, 0.0)
    v = VecField2(2.0, -3.0)
    assert star(star(v)) == v


def test_star_agrees_with_quaternion_sandwich():
    v = VecField2(2.0, -3.0)
    sandwich = -quat_mul(quat_mul(E1, v), E2)
    assert_allclose(sandwich, [0.0, -3.0, 2.0, 0.0], atol=1e-15)
    assert star(v) == VecField2(-3.0, 2.0)


def test_star_is_isometry():
    v = VecField2(0.3, -1.7)
    assert star(v).magnitude == v.magnitude


def test_turn_is_right_product_by_e3():
    v = VecField2(2.0, -3.0)
    e3 = np.array([0.0, 0.0, 0.0, 1.0])
    assert_allclose(quat_mul(v, e3), [0.0, -3.0, -2.0, 0.0])
    assert turn(v) == VecField2(-3.0, -2.0)
    assert turn(turn(v)) == VecField2(-2.0, 3.0)


def test_scalar_vector_conjugate_split():
    q = ReducedQuaternion(2.0, 3.0, -1.0)
    assert sc(q) == 2.0
    assert vec(q) == VecField2(3.0, -1.0)
    assert conj(q) == ReducedQuaternion(2.0, -3.0, 1.0)
    half_sum = (q + conj(q)).scale(0.5)
    half_diff = (q - conj(q)).scale(0.5)
    assert half_sum == ReducedQuaternion(2.0, 0.0, 0.0)
    assert half_diff == vec(q).as_quaternion()


def test_array_helpers_keep_component_axis():
    values = np.arange(9.0).reshape(3, 3)
    assert_allclose(sc(values), values[0])
    assert_allclose(vec(values), values[1:])
    assert_allclose(conj(values), np.stack([values[0], -values[1], -values[2]]))
    assert_allclose(star(values[1:]), values[[2, 1]])
