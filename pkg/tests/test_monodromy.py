import math
from fractions import Fraction as F

import numpy as np
import pytest

from lame_monodromy.geom import InvalidInputError
from lame_monodromy.goldens import group_table
from lame_monodromy.monodromy import (
    HEMISPHERE_SIGN_RULE,
    dihedral_groups_from_params,
    groups_from_triangle,
    params_from_lengths,
    shift_params,
)
from lame_monodromy.triangles import SphericalTriangle, enumerate_basic

SOLID_OF = {
    "octahedral": "octahedron",
    "cubical": "cube",
    "icosahedral": "icosahedron",
    "dodecahedral": "dodecahedron",
}


def _profile_for_family(family):
    for entry in enumerate_basic(SOLID_OF[family]):
        if entry.family == family and entry.triangle is not None:
            return groups_from_triangle(entry.triangle)
    raise AssertionError(f"no geometric entry for {family}")


@pytest.mark.parametrize("family", sorted(SOLID_OF))
def test_platonic_group_labels(family):
    want = next(r for r in group_table() if r["family"] == family)
    profile = _profile_for_family(family)
    assert (profile.m, profile.pm, profile.mt, profile.pmt) == (
        want["M"], want["PM"], want["Mt"], want["PMt"],
    )
    # the lifted group is a double cover of the ordinary one
    assert profile.mt_order == 2 * profile.m_order


def test_klein_four_profile():
    tri = SphericalTriangle(
        theta=(F(1, 2), F(1), F(1, 2)),
        lengths=(math.pi, math.pi, math.pi),
        q_points=[np.eye(3)[i] for i in range(3)],
    )
    profile = groups_from_triangle(tri)
    assert (profile.m, profile.pm, profile.mt, profile.pmt) == (
        "Q8", "K4", "P1", "K4",
    )
    assert (profile.m_order, profile.pm_order,
            profile.mt_order, profile.pmt_order) == (8, 4, 16, 4)


def test_dihedral_exact_groups():
    profile = dihedral_groups_from_params(F(1, 3), F(1, 3))
    assert (profile.m, profile.pm, profile.mt, profile.pmt) == (
        "C3", "C3", "D3", "D3",
    )
    # half-integer parameters double only on the non-projective side
    profile = dihedral_groups_from_params(F(1, 6), F(1, 3))
    assert profile.m == "C6" and profile.pm == "C3"
    with pytest.raises(InvalidInputError):
        dihedral_groups_from_params(F(1), F(1, 3))
    with pytest.raises(InvalidInputError):
        dihedral_groups_from_params(F(1, 2), F(1, 2), n=1)


def test_params_from_lengths_and_shift():
    params = params_from_lengths((math.pi, math.pi / 2, math.pi / 2))
    assert params.s == F(1, 4)
    assert params.t == F(3, 8)
    shifted = shift_params(params, (1, 2, 0))
    assert shifted.s - params.s == F(2 + 0, 2)
    assert shifted.t - params.t == F(1 + 0, 2)
    negated = params_from_lengths((math.pi, math.pi / 2, math.pi / 2),
                                  center="infinity")
    assert negated.s == -params.s


def test_hemisphere_sign_rule_flips_generator():
    assert HEMISPHERE_SIGN_RULE == -1
    entry = next(
        e for e in enumerate_basic("octahedron")
        if e.family == "octahedral" and e.triangle is not None
    )
    base = groups_from_triangle(entry.triangle)
    signed = groups_from_triangle(entry.triangle, counts=(1, 0, 0))
    # signs never change the projective groups
    assert signed.pmt == base.pmt
    assert signed.pm == base.pm
