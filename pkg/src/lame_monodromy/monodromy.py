"""Monodromy groups of the constructed equations.

From a basic triangle with arc midpoints q_1, q_2, q_3 and hemisphere counts
(m_1, m_2, m_3) we form the order-two unitaries

    gamma_i = (-1)^(m_i) * i * lift(half turn about q_i)

and take  Mt = <gamma_1, gamma_2, gamma_3>  acting on the projective line and
M = <gamma_1 gamma_3, gamma_2 gamma_3>  (index two) acting on the elliptic
curve; PM and PMt are their images in SO(3).

The sign rule reflects that attaching a hemisphere moves an arc midpoint to
its antipode, which negates the lifted half turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .counting import region_weight
from .geom import (
    CLOSURE_CAP,
    TOL_GROUP,
    FiniteMatrixGroup,
    InvalidInputError,
    axial_reflection,
    close_group,
    identify_group,
    lift_gamma,
)
from .triangles import SphericalTriangle

# Sign picked up by gamma_i per hemisphere attached along edge i.
HEMISPHERE_SIGN_RULE = -1


@dataclass
class MonodromyParams:
    """Multipliers (s, t) mod 1 of the two solution branches along the two
    torus periods."""

    s: Fraction
    t: Fraction

    def reduced(self) -> "MonodromyParams":
        return MonodromyParams(self.s % 1, self.t % 1)


@dataclass
class MonodromyProfile:
    """Names and orders of the four monodromy groups of one equation."""

    m: str
    pm: str
    mt: str
    pmt: str
    m_order: int
    pm_order: int
    mt_order: int
    pmt_order: int
    groups: dict | None = None


def params_from_lengths(lengths, center: str = "zero") -> MonodromyParams:
    """Monodromy parameters of the hemisphere basic triangle with the given
    edge lengths (radians).  `center` selects which of the two antipodal
    centers maps to 0; the other choice negates both parameters."""
    l1, l2, l3 = (Fraction(x) if isinstance(x, (int, Fraction)) else x for x in lengths)
    four_pi = 4 * math.pi
    s = (l2 + l3) / four_pi
    t = (l1 + l3) / four_pi
    if center == "infinity":
        s, t = -s, -t
    elif center != "zero":
        raise InvalidInputError("center must be 'zero' or 'infinity'")
    return MonodromyParams(
        s=_to_fraction(s),
        t=_to_fraction(t),
    )


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    frac = Fraction(x).limit_denominator(10_000)
    return frac if abs(float(frac) - x) < 1e-9 else Fraction(x)


def shift_params(params: MonodromyParams, counts) -> MonodromyParams:
    """Parameter shift from attaching hemisphere counts (m1, m2, m3):
    each hemisphere on edge 2 or 3 shifts s by 1/2, each on edge 1 or 3
    shifts t by 1/2."""
    m1, m2, m3 = counts
    if min(m1, m2, m3) < 0:
        raise InvalidInputError("hemisphere counts must be nonnegative")
    return MonodromyParams(
        s=params.s + Fraction(m2 + m3, 2),
        t=params.t + Fraction(m1 + m3, 2),
    )


def params_from_triangle(
    tri: SphericalTriangle, counts=(0, 0, 0), center: str = "zero"
) -> MonodromyParams:
    return shift_params(params_from_lengths(tri.lengths, center=center), counts)


def groups_from_triangle(
    tri: SphericalTriangle,
    counts=(0, 0, 0),
    tol: float = TOL_GROUP,
    cap: int = CLOSURE_CAP,
) -> MonodromyProfile:
    """Compute and identify all four monodromy groups numerically."""
    if tri.q_points is None:
        raise InvalidInputError("triangle carries no arc midpoints")
    gammas = [
        (HEMISPHERE_SIGN_RULE ** (counts[i] % 2)) * lift_gamma(tri.q_points[i])
        for i in range(3)
    ]
    rotations = [axial_reflection(tri.q_points[i]) for i in range(3)]
    mt = close_group(gammas, tol=tol, cap=cap)
    m = close_group([gammas[0] @ gammas[2], gammas[1] @ gammas[2]], tol=tol, cap=cap)
    pmt = close_group(rotations, tol=tol, cap=cap)
    pm = close_group(
        [rotations[0] @ rotations[2], rotations[1] @ rotations[2]], tol=tol, cap=cap
    )
    return MonodromyProfile(
        m=identify_group(m),
        pm=identify_group(pm),
        mt=identify_group(mt),
        pmt=identify_group(pmt),
        m_order=m.order,
        pm_order=pm.order,
        mt_order=mt.order,
        pmt_order=pmt.order,
        groups={"m": m, "pm": pm, "mt": mt, "pmt": pmt},
    )


def _denominator_mod1(x: Fraction) -> int:
    return (x % 1).denominator


def dihedral_groups_from_params(
    s,
    t,
    n: int | None = None,
) -> MonodromyProfile:
    """Exact monodromy groups of a dihedral equation with parameters (s, t).

    The ordinary group is cyclic of order K = lcm of the denominators of s
    and t mod 1, sitting inside the binary dihedral group of order 2K; the
    projective pair uses 2s and 2t instead.  Parameters with s or t integral
    are rejected (the corresponding region constraints are violated), as are
    parameters carrying no equation of index n when n is supplied.
    """
    s, t = Fraction(s), Fraction(t)
    if s % 1 == 0 or t % 1 == 0:
        raise InvalidInputError("parameters on the lattice boundary: no equation")
    if n is not None and region_weight(n, s, t) == 0:
        raise InvalidInputError(f"no equation of index {n} has parameters {(s, t)}")
    k = math.lcm(_denominator_mod1(s), _denominator_mod1(t))
    kp = math.lcm(_denominator_mod1(2 * s), _denominator_mod1(2 * t))
    return MonodromyProfile(
        m=f"C{k}",
        pm=f"C{kp}",
        mt=f"D{k}",
        pmt=f"D{kp}",
        m_order=k,
        pm_order=kp,
        mt_order=2 * k,
        pmt_order=2 * kp,
    )
