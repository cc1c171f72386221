import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lame_monodromy.geom import (
    ClosureLimitError,
    axial_reflection,
    close_group,
    identify_group,
    lift_gamma,
    lift_half_turn,
    project_to_rotation,
    quat_from_axis_angle,
    quat_mul,
    quat_to_rotation,
    quat_to_su2,
    su2_to_quat,
    unit,
)

unit_vectors = st.tuples(
    st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)
).filter(lambda v: sum(x * x for x in v) > 0.1).map(lambda v: unit(np.array(v)))


@given(unit_vectors, st.floats(-math.pi, math.pi))
def test_quaternion_rotation_matches_su2_projection(axis, angle):
    q = quat_from_axis_angle(axis, angle)
    rot = quat_to_rotation(q)
    proj = project_to_rotation(quat_to_su2(q))
    assert np.allclose(rot, proj, atol=1e-10)


@given(unit_vectors, unit_vectors, st.floats(-math.pi, math.pi),
       st.floats(-math.pi, math.pi))
def test_quat_mul_is_rotation_composition(a1, a2, t1, t2):
    q1 = quat_from_axis_angle(a1, t1)
    q2 = quat_from_axis_angle(a2, t2)
    lhs = quat_to_rotation(quat_mul(q1, q2))
    rhs = quat_to_rotation(q1) @ quat_to_rotation(q2)
    assert np.allclose(lhs, rhs, atol=1e-10)


@given(unit_vectors)
def test_su2_quat_round_trip(axis):
    q = quat_from_axis_angle(axis, 0.7)
    back = su2_to_quat(quat_to_su2(q))
    assert np.allclose(q, back, atol=1e-12)


@given(unit_vectors)
def test_axial_reflection_is_half_turn(p):
    r = axial_reflection(p)
    assert np.allclose(r @ r, np.eye(3), atol=1e-10)
    assert np.allclose(r @ p, p, atol=1e-10)
    assert math.isclose(np.linalg.det(r), 1.0, abs_tol=1e-10)


@given(unit_vectors)
def test_lifted_generator_squares_to_identity_with_det_minus_one(p):
    g = lift_gamma(p)
    assert np.allclose(g @ g, np.eye(2), atol=1e-10)
    assert abs(np.linalg.det(g) + 1) < 1e-10
    assert np.allclose(project_to_rotation(1j * lift_half_turn(p)),
                       axial_reflection(p), atol=1e-10)


def test_close_group_cyclic():
    rot = quat_to_rotation(quat_from_axis_angle(np.array([0, 0, 1.0]), 2 * math.pi / 5))
    g = close_group([rot])
    assert g.order == 5
    assert identify_group(g) == "C5"


def test_close_group_dihedral():
    rz = quat_to_rotation(quat_from_axis_angle(np.array([0, 0, 1.0]), 2 * math.pi / 4))
    rx = axial_reflection(np.array([1.0, 0, 0]))
    g = close_group([rz, rx])
    assert g.order == 8
    assert identify_group(g) == "D4"


def test_close_group_hits_cap():
    irrational = quat_to_rotation(
        quat_from_axis_angle(np.array([0, 0, 1.0]), 1.0)
    )
    with pytest.raises(ClosureLimitError):
        close_group([irrational], cap=64)


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 12))
def test_cyclic_labels(k):
    rot = quat_to_rotation(
        quat_from_axis_angle(np.array([0, 0, 1.0]), 2 * math.pi / k)
    )
    g = close_group([rot])
    assert g.order == k
    assert identify_group(g) == f"C{k}"
