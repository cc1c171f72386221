"""Rotations, their unitary lifts, and finite matrix group identification.

Conventions
-----------
* Points on the unit sphere are numpy arrays of shape (3,).
* Quaternions are tuples/arrays (w, x, y, z) with Hamilton multiplication.
* The double cover SU(2) -> SO(3) is realised so that the unit quaternion
  q = (w, x, y, z) maps to the unitary

      [[w + iz,  x + iy],
       [-x + iy, w - iz]]

  which sends the half turn about +z to diag(i, -i).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

TOL_GEOM = 1e-9
TOL_GROUP = 1e-6
CLOSURE_CAP = 1024

MAX_ELEMENT_ORDER = 240


class InvalidInputError(ValueError):
    """Raised when a request is malformed or out of the supported domain."""


class ClosureLimitError(RuntimeError):
    """Raised when a group closure exceeds the configured element cap."""


# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------

def unit(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    norm = np.linalg.norm(v)
    if norm < TOL_GEOM:
        raise InvalidInputError("cannot normalise a (near-)zero vector")
    return v / norm


def is_unit(v, tol: float = 1e-7) -> bool:
    return abs(np.linalg.norm(np.asarray(v, dtype=float)) - 1.0) <= tol


def sphere_angle(u, v) -> float:
    """Angle in [0, pi] between two unit vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return math.atan2(np.linalg.norm(np.cross(u, v)), float(np.dot(u, v)))


# ---------------------------------------------------------------------------
# Quaternions
# ---------------------------------------------------------------------------

def quat_mul(p, q):
    pw, px, py, pz = p
    qw, qx, qy, qz = q
    return (
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    )


def quat_from_axis_angle(axis, angle: float):
    axis = unit(axis)
    half = 0.5 * angle
    s = math.sin(half)
    return (math.cos(half), s * axis[0], s * axis[1], s * axis[2])


def quat_to_rotation(q) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
        ]
    )


def quat_to_su2(q) -> np.ndarray:
    w, x, y, z = q
    return np.array(
        [[w + 1j * z, x + 1j * y], [-x + 1j * y, w - 1j * z]], dtype=complex
    )


def su2_to_quat(u) -> tuple[float, float, float, float]:
    a, b = u[0, 0], u[0, 1]
    c, d = u[1, 0], u[1, 1]
    return (
        0.5 * (a + d).real,
        0.5 * (b - c).real,
        0.5 * (b + c).imag,
        0.5 * (a - d).imag,
    )


# ---------------------------------------------------------------------------
# Half turns and their lifts
# ---------------------------------------------------------------------------

def axial_reflection(p) -> np.ndarray:
    """Rotation of S^2 by pi about the axis through p (and -p)."""
    p = unit(p)
    return 2.0 * np.outer(p, p) - np.eye(3)


def lift_half_turn(p) -> np.ndarray:
    """The SU(2) lift of the half turn about p along the path of angles 0..pi."""
    p = unit(p)
    return quat_to_su2((0.0, p[0], p[1], p[2]))


def lift_gamma(p) -> np.ndarray:
    """Order-two unitary with determinant -1 attached to the axis p.

    This is i times the SU(2) lift of the half turn about p; it squares to
    the identity and projects to the same rotation as ``axial_reflection(p)``.
    """
    return 1j * lift_half_turn(p)


def project_to_rotation(u) -> np.ndarray:
    """Image in SO(3) of a 2x2 unitary under the projective quotient."""
    u = np.asarray(u, dtype=complex)
    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    su = u / cmath.sqrt(det)
    return quat_to_rotation(su2_to_quat(su))


# ---------------------------------------------------------------------------
# Finite matrix groups
# ---------------------------------------------------------------------------

@dataclass
class FiniteMatrixGroup:
    """A finite group of matrices stored as an explicit element list."""

    elements: list[np.ndarray]
    generators: list[np.ndarray] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def is_complex(self) -> bool:
        return np.iscomplexobj(self.elements[0])

    def contains(self, m, tol: float = TOL_GROUP) -> bool:
        return _find(self.elements, np.asarray(m), tol) is not None

    def determinants(self) -> list[complex]:
        return [complex(np.linalg.det(m)) for m in self.elements]

    def is_abelian(self, tol: float = TOL_GROUP) -> bool:
        els = self.elements
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                if np.max(np.abs(els[i] @ els[j] - els[j] @ els[i])) > tol:
                    return False
        return True

    def element_orders(self, tol: float = TOL_GROUP) -> list[int]:
        return [element_order(m, tol) for m in self.elements]


def _find(elements: list[np.ndarray], m: np.ndarray, tol: float) -> int | None:
    for i, e in enumerate(elements):
        if np.max(np.abs(e - m)) <= tol:
            return i
    return None


def element_order(m, tol: float = TOL_GROUP, cap: int = MAX_ELEMENT_ORDER) -> int:
    m = np.asarray(m)
    eye = np.eye(m.shape[0], dtype=m.dtype)
    p = m.copy()
    for k in range(1, cap + 1):
        if np.max(np.abs(p - eye)) <= tol:
            return k
        p = p @ m
    raise ClosureLimitError(f"element order exceeds {cap}")


def close_group(
    generators,
    tol: float = TOL_GROUP,
    cap: int = CLOSURE_CAP,
) -> FiniteMatrixGroup:
    """Close a list of matrices under multiplication.

    Raises ClosureLimitError if more than ``cap`` distinct elements appear,
    which signals an infinite (or merely too large) generated group.
    """
    gens = [np.asarray(g) for g in generators]
    if not gens:
        raise InvalidInputError("need at least one generator")
    dim = gens[0].shape[0]
    dtype = complex if any(np.iscomplexobj(g) for g in gens) else float
    gens = [g.astype(dtype) for g in gens]
    elements = [np.eye(dim, dtype=dtype)]
    frontier = [elements[0]]
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in gens:
                m = e @ g
                if _find(elements, m, tol) is None:
                    elements.append(m)
                    new_frontier.append(m)
                    if len(elements) > cap:
                        raise ClosureLimitError(
                            f"group closure exceeded cap of {cap} elements"
                        )
        frontier = new_frontier
    return FiniteMatrixGroup(elements=elements, generators=gens)


def _rotation_label(group: FiniteMatrixGroup) -> str:
    n = group.order
    orders = sorted(set(group.element_orders()))
    max_order = orders[-1]
    if n == 1:
        return "C1"
    if group.is_abelian():
        if max_order == n:
            return f"C{n}"
        if n == 4 and max_order == 2:
            return "K4"
        return f"abelian[{n}]"
    if n == 12 and max_order == 3:
        return "A4"
    if n == 24 and orders == [1, 2, 3, 4]:
        return "S4"
    if n == 60 and orders == [1, 2, 3, 5]:
        return "A5"
    if n == 2 * max_order:
        return f"D{max_order}"
    return f"unknown-rotation[{n}]"


def _unitary_label(group: FiniteMatrixGroup) -> str:
    n = group.order
    dets = group.determinants()
    det_one = sum(1 for d in dets if abs(d - 1) <= 1e-6)
    all_det_one = det_one == n
    orders = sorted(set(group.element_orders()))
    max_order = orders[-1]
    if group.is_abelian():
        if max_order == n:
            return f"C{n}"
        if n == 4 and max_order == 2:
            return "K4"
        return f"abelian[{n}]"
    if all_det_one:
        if n == 8 and max_order == 4:
            return "Q8"
        if n == 24 and max_order == 6:
            return "G12+"
        if n == 48 and max_order == 8:
            return "G13+"
        if n == 120 and max_order == 10:
            return "G22+"
        if n == 2 * max_order or (n % 4 == 0 and n == 2 * max_order):
            return f"binary-D{n // 4}"
        return f"unknown-unitary[{n}]"
    if 2 * det_one != n:
        return f"unknown-unitary[{n}]"
    det_one_part = FiniteMatrixGroup(
        elements=[m for m, d in zip(group.elements, dets) if abs(d - 1) <= 1e-6]
    )
    if n == 16 and max_order == 4:
        return "P1"
    if n == 48 and _unitary_label(det_one_part) == "G12+":
        return "G12"
    if n == 96 and _unitary_label(det_one_part) == "G13+":
        return "G13"
    if n == 240 and _unitary_label(det_one_part) == "G22+":
        return "G22"
    if det_one_part.is_abelian() and max(det_one_part.element_orders()) == n // 2:
        return f"D{n // 2}"
    return f"unknown-unitary[{n}]"


def identify_group(group: FiniteMatrixGroup) -> str:
    """Name a finite subgroup of SO(3) or U(2) by its isomorphism type.

    Labels: C<k>, D<k> (order 2k), K4, A4, S4, A5, Q8, P1 (the order-16
    Pauli group), G12/G12+/G13/G13+/G22/G22+ (Shephard-Todd reflection
    groups and their determinant-one halves).
    """
    if group.is_complex():
        return _unitary_label(group)
    return _rotation_label(group)
