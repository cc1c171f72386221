"""Spherical triangles: balance, existence, decomposition, and the atlas of
basic triangles on marked vertex configurations.

Angles are measured in units of pi throughout and handled as Fractions
wherever exactness matters.  A triangle with angles (t1, t2, t3) has index
n = (t1 + t2 + t3 - 1) / 2; attaching a hemisphere along edge i complements
that edge's arc, adds 1 to the other two angles, and raises n by 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

import numpy as np

from .geom import InvalidInputError, sphere_angle, unit
from .solids import SolidSpec, build_solid, graph_distance

_ANGLE_TOL = 1e-7
_SNAP_TOL = 1e-6
_MAX_ANGLE_DEN = 100


# ---------------------------------------------------------------------------
# Arcs of great circles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    """Great-circle arc from `start`, initially towards `w`, of length `sweep`.

    `w` is a unit vector orthogonal to `start` in the arc's plane, so the arc
    is parametrised by position(t) = cos(t) start + sin(t) w for t in
    [0, sweep] with sweep in (0, 2 pi).
    """

    start: tuple[float, float, float]
    w: tuple[float, float, float]
    sweep: float

    def position(self, t: float) -> np.ndarray:
        return math.cos(t) * np.array(self.start) + math.sin(t) * np.array(self.w)

    @property
    def end(self) -> np.ndarray:
        return self.position(self.sweep)

    @property
    def midpoint(self) -> np.ndarray:
        return self.position(self.sweep / 2.0)

    @property
    def leave_dir(self) -> np.ndarray:
        return np.array(self.w)

    @property
    def arrive_dir(self) -> np.ndarray:
        return -math.sin(self.sweep) * np.array(self.start) + math.cos(
            self.sweep
        ) * np.array(self.w)

    @property
    def normal(self) -> np.ndarray:
        return np.cross(self.start, self.w)

    def reversed(self) -> "Arc":
        return Arc(
            start=tuple(self.end),
            w=tuple(-self.arrive_dir),
            sweep=self.sweep,
        )

    def complemented(self) -> "Arc":
        """Arc with the same endpoints running the other way round the circle."""
        return Arc(
            start=self.start,
            w=tuple(-np.array(self.w)),
            sweep=2.0 * math.pi - self.sweep,
        )

    def contains_interior(self, x, tol: float = _ANGLE_TOL) -> bool:
        x = np.asarray(x, dtype=float)
        t = math.atan2(float(np.dot(x, self.w)), float(np.dot(x, self.start)))
        t %= 2.0 * math.pi
        return tol < t < self.sweep - tol


def arc_between(a, b, major: bool = False) -> Arc:
    """Minor (or major) arc between two non-antipodal unit vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    gap = sphere_angle(a, b)
    if gap < _ANGLE_TOL or gap > math.pi - _ANGLE_TOL:
        raise InvalidInputError("endpoints coincide or are antipodal")
    w = unit(b - float(np.dot(a, b)) * a)
    arc = Arc(start=tuple(a), w=tuple(w), sweep=gap)
    return arc.complemented() if major else arc


def arcs_cross(a: Arc, b: Arc, tol: float = _ANGLE_TOL) -> bool:
    """Whether two arcs meet away from their endpoints."""
    c = np.cross(a.normal, b.normal)
    norm = np.linalg.norm(c)
    if norm < tol:
        # same great circle: the arcs overlap iff either contains an
        # endpoint of the other in its interior
        return any(
            arc.contains_interior(pt, tol)
            for arc, other in ((a, b), (b, a))
            for pt in (other.position(0.0), other.end)
        )
    x = c / norm
    for cand in (x, -x):
        if a.contains_interior(cand, tol) and b.contains_interior(cand, tol):
            return True
    return False


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


@dataclass
class SphericalTriangle:
    """A marked spherical triangle.

    theta[i] is the angle (in pi-units) at vertices[i]; lengths[i] and
    q_points[i] are the radian length and midpoint of the edge opposite
    vertices[i].  Arcs, when present, are in boundary order
    (v0 -> v1 -> v2 -> v0).
    """

    theta: tuple[Fraction, Fraction, Fraction]
    lengths: tuple[float, float, float]
    vertices: list[np.ndarray] | None = None
    arcs: list[Arc] | None = None
    q_points: list[np.ndarray] | None = None

    @property
    def n(self) -> Fraction:
        return (sum(self.theta) - 1) / 2

    @property
    def balance(self) -> str:
        return balance_class(self.theta)


def balance_class(theta) -> str:
    """'balanced' (strict), 'semibalanced' (some ti = tj + tk), or 'unbalanced'."""
    t = [Fraction(x) for x in theta]
    if len(t) != 3 or any(x <= 0 for x in t):
        raise InvalidInputError("need three positive angles")
    total = sum(t)
    if any(2 * x == total for x in t):
        return "semibalanced"
    if any(2 * x > total for x in t):
        return "unbalanced"
    return "balanced"


def exists_triangle(theta, reading: str = "per_index") -> str:
    """Existence of a spherical triangle with the given angles (pi-units).

    Returns 'exists_unique', 'exists_family', or 'not_exists'.  With no
    integral angle, a unique triangle exists exactly when every integer
    triple (n1, n2, n3) of even sum keeps sum_i |t_i - n_i| > 1; the
    'first_angle' reading compares every n_i against t_1 instead.
    """
    t = [Fraction(x) for x in theta]
    if any(x <= 0 for x in t):
        raise InvalidInputError("need three positive angles")
    integral = [x.denominator == 1 for x in t]
    count = sum(integral)
    if count == 0:
        ref = [t[0]] * 3 if reading == "first_angle" else t
        if reading not in ("per_index", "first_angle"):
            raise InvalidInputError(f"unknown reading {reading!r}")
        bounds = [math.ceil(x) + 1 for x in ref]
        for n1 in range(0, bounds[0] + 1):
            for n2 in range(0, bounds[1] + 1):
                for n3 in range(0, bounds[2] + 1):
                    if (n1 + n2 + n3) % 2 != 0:
                        continue
                    if abs(ref[0] - n1) + abs(ref[1] - n2) + abs(ref[2] - n3) <= 1:
                        return "not_exists"
        return "exists_unique"
    if count == 1:
        order = sorted(range(3), key=lambda i: not integral[i])
        t1, t2, t3 = (t[i] for i in order)

        def odd_positive(x: Fraction) -> bool:
            return x.denominator == 1 and x > 0 and x % 2 == 1

        if (odd_positive(t1 + t2 - t3) and odd_positive(t1 + t3 - t2)) or odd_positive(
            t1 - t2 - t3
        ):
            return "exists_family"
        return "not_exists"
    if count == 2:
        return "not_exists"
    total = sum(t)
    return "exists_family" if total % 2 == 1 else "not_exists"


# ---------------------------------------------------------------------------
# Hemisphere attachment / decomposition
# ---------------------------------------------------------------------------


def attach_hemisphere(tri: SphericalTriangle, i: int) -> SphericalTriangle:
    """Attach a hemisphere along edge i (the edge opposite vertex i)."""
    if i not in (0, 1, 2):
        raise InvalidInputError("edge index must be 0, 1, or 2")
    theta = tuple(
        tri.theta[j] + (0 if j == i else 1) for j in range(3)
    )
    lengths = tuple(
        2.0 * math.pi - tri.lengths[j] if j == i else tri.lengths[j] for j in range(3)
    )
    q_points = None
    if tri.q_points is not None:
        q_points = [
            -tri.q_points[j] if j == i else tri.q_points[j] for j in range(3)
        ]
    arcs = None
    if tri.arcs is not None:
        # arcs[k] joins vertex k to vertex k+1, i.e. it is opposite vertex
        # (k + 2) mod 3; complement the one opposite vertex i.
        arcs = [
            tri.arcs[k].complemented() if (k + 2) % 3 == i else tri.arcs[k]
            for k in range(3)
        ]
    return SphericalTriangle(
        theta=theta,
        lengths=lengths,
        vertices=tri.vertices,
        arcs=arcs,
        q_points=q_points,
    )


def _counts_for(theta, phi):
    """Hemisphere counts solving theta_i = (sum of other two counts) + phi_i."""
    out = []
    for i in range(3):
        j, k = (i + 1) % 3, (i + 2) % 3
        val = (theta[j] + theta[k] - theta[i] - (phi[j] + phi[k] - phi[i])) / 2
        if val.denominator != 1 or val < 0:
            return None
        out.append(int(val))
    return tuple(out)


def _is_basic(phi) -> bool:
    """Basic triangles: balanced with n <= 1, or complements of strictly
    balanced triangles with n < 1."""
    n = (sum(phi) - 1) / 2
    if n <= 0:
        return False
    cls = balance_class(phi)
    if n <= 1:
        return cls in ("balanced", "semibalanced")
    if n < 2:
        comp = tuple(2 - x for x in phi)
        return balance_class(comp) == "balanced"
    return False


def decompose_balanced(theta):
    """Write a balanced triangle as a basic triangle plus hemisphere counts.

    Returns (basic_theta, counts) with counts[i] hemispheres attached along
    edge i.  Raises InvalidInputError when the angles are unbalanced or no
    decomposition exists.
    """
    t = tuple(Fraction(x) for x in theta)
    if balance_class(t) == "unbalanced":
        raise InvalidInputError("triangle is unbalanced")
    integral = [x.denominator == 1 for x in t]
    count = sum(integral)
    if count == 3:
        if sum(t) % 2 != 1:
            raise InvalidInputError("integral angles must have odd sum")
        counts = _counts_for(t, (Fraction(1), Fraction(1), Fraction(1)))
        if counts is None:
            raise InvalidInputError("no hemisphere decomposition")
        return (Fraction(1), Fraction(1), Fraction(1)), counts
    if count == 2:
        raise InvalidInputError("exactly two integral angles admit no triangle")
    if count == 1:
        i = integral.index(True)
        j, k = (i + 1) % 3, (i + 2) % 3
        t1, t2, t3 = t[i], t[j], t[k]
        if (t2 - t3).denominator != 1:
            raise InvalidInputError("fractional parts of the two angles differ")
        if (t1 - 1 - (t2 - t3)) % 2 != 0:
            raise InvalidInputError("parity obstruction: no decomposition")
        b = (t1 - 1 - (t2 - t3)) / 2
        c = (t1 - 1 + (t2 - t3)) / 2
        if b < 0 or c < 0:
            raise InvalidInputError("negative hemisphere count")
        x = t2 - c
        frac = x - math.floor(x)
        phi = frac if frac >= Fraction(1, 2) else frac + 1
        a = x - phi
        if a.denominator != 1 or a < 0:
            raise InvalidInputError("no digon decomposition")
        basic = [Fraction(0)] * 3
        counts = [0] * 3
        basic[i], basic[j], basic[k] = Fraction(1), phi, phi
        counts[i], counts[j], counts[k] = int(a), int(b), int(c)
        return tuple(basic), tuple(counts)
    # no integral angle: the basic angles agree with theta mod 1 up to a
    # uniform choice of representative in (0, 1) or (1, 2) per slot
    fracs = [x - math.floor(x) for x in t]
    solutions = []
    for bits in range(8):
        phi = tuple(
            fracs[i] + (1 if (bits >> i) & 1 else 0) for i in range(3)
        )
        if not _is_basic(phi):
            continue
        counts = _counts_for(t, phi)
        if counts is None:
            continue
        solutions.append((phi, counts))
    if not solutions:
        raise InvalidInputError("no hemisphere decomposition")
    if len(solutions) > 1:
        raise ArithmeticError(f"ambiguous decomposition for {t}: {solutions}")
    return solutions[0]


# ---------------------------------------------------------------------------
# Atlas enumeration
# ---------------------------------------------------------------------------


@dataclass
class AtlasEntry:
    """One basic-triangle class found on a marked configuration."""

    family: str
    n: Fraction
    distances: tuple[tuple[int, bool], ...] | None
    note: str | None = None
    complement: bool = False
    triangle: SphericalTriangle | None = field(default=None, repr=False)

    def row_key(self):
        return (self.family, self.distances, self.note)


_FAMILY = {
    "tetrahedron": "tetrahedral",
    "octahedron": "octahedral",
    "cube": "cubical",
    "icosahedron": "icosahedral",
    "dodecahedron": "dodecahedral",
}


def _turning_angles(vertices, arcs):
    """Interior angles (pi-units, floats) at each vertex of a closed
    three-arc boundary traversed v0 -> v1 -> v2 -> v0."""
    thetas = []
    for i in range(3):
        incoming = arcs[(i + 2) % 3]
        outgoing = arcs[i]
        u = incoming.arrive_dir
        v = outgoing.leave_dir
        turn = math.atan2(
            float(np.dot(np.cross(u, v), vertices[i])), float(np.dot(u, v))
        )
        thetas.append(1.0 - turn / math.pi)
    return thetas


def _numeric_balance(thetas, tol: float = _SNAP_TOL) -> str:
    total = sum(thetas)
    if any(abs(2 * x - total) < tol for x in thetas):
        return "semibalanced"
    if any(2 * x > total + tol for x in thetas):
        return "unbalanced"
    return "balanced"


def _snap(value: float) -> Fraction | None:
    frac = Fraction(value).limit_denominator(_MAX_ANGLE_DEN)
    return frac if abs(float(frac) - value) < _SNAP_TOL else None


def _in_point_set(x, points, tol: float = 1e-6) -> bool:
    return bool(np.min(np.linalg.norm(points - np.asarray(x), axis=1)) < tol)


def _cyclic_min(seq: tuple) -> tuple:
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _geometry_key(vertices, arcs, rotation=None):
    pts = list(vertices) + [a.midpoint for a in arcs]
    if rotation is not None:
        pts = [rotation @ p for p in pts]
    return tuple(sorted(tuple(round(float(c), 5) + 0.0 for c in p) for p in pts))


def _canonical_key(vertices, arcs, rotations):
    return min(_geometry_key(vertices, arcs, rot) for rot in rotations)


def _assemble(solid: SolidSpec, idx, arcs):
    """Validate a candidate boundary and return (entries, klein_found)."""
    vertices = [np.asarray(solid.vertices[i]) for i in idx]
    # all arc midpoints must sit on the solid's marked axis set
    if not all(_in_point_set(a.midpoint, solid.q_points) for a in arcs):
        return [], False
    # the boundary must be simple
    for i in range(3):
        for j in range(i + 1, 3):
            if arcs_cross(arcs[i], arcs[j]):
                return [], False
    thetas = _turning_angles(vertices, arcs)
    n_float = (sum(thetas) - 1.0) / 2.0
    if n_float > 1.0:
        idx = (idx[0], idx[2], idx[1])
        vertices = [vertices[0], vertices[2], vertices[1]]
        arcs = [arcs[2].reversed(), arcs[1].reversed(), arcs[0].reversed()]
        thetas = _turning_angles(vertices, arcs)
        n_float = (sum(thetas) - 1.0) / 2.0
    n = _snap(n_float)
    if n is None:
        return [], False
    # individual angles need not be rational; snap only when they are
    theta = tuple(_snap(x) if _snap(x) is not None else x for x in thetas)
    if _numeric_balance(thetas) == "unbalanced":
        return [], False
    if n * 2 == 1:
        return [], True  # Klein-four configuration
    if not 0 < n < 1:
        return [], False
    dmat = solid.distance_matrix()
    dist = tuple(
        (int(dmat[idx[i], idx[(i + 1) % 3]]), arcs[i].sweep > math.pi + _ANGLE_TOL)
        for i in range(3)
    )
    tri = SphericalTriangle(
        theta=theta,
        lengths=tuple(arcs[(i + 1) % 3].sweep for i in range(3)),
        vertices=vertices,
        arcs=list(arcs),
        q_points=[arcs[(i + 1) % 3].midpoint for i in range(3)],
    )
    note = None
    if _numeric_balance(thetas) == "semibalanced":
        note = "semibalanced"
    elif (
        max(thetas) - min(thetas) < _SNAP_TOL
        and len(set(dist)) == 1
        and max(tri.lengths) - min(tri.lengths) < _SNAP_TOL
    ):
        note = "regular"
    entry = AtlasEntry(
        family=_FAMILY[solid.name],
        n=n,
        distances=dist,
        note=note,
        triangle=tri,
    )
    entries = [entry]
    if note != "semibalanced":
        comp_theta = tuple(2 - x for x in theta)
        comp = SphericalTriangle(
            theta=comp_theta,
            lengths=tri.lengths,
            vertices=vertices,
            arcs=list(arcs),
            q_points=tri.q_points,
        )
        entries.append(
            AtlasEntry(
                family=entry.family,
                n=2 - n,
                distances=dist,
                note=note,
                complement=True,
                triangle=comp,
            )
        )
    return entries, False


def _platonic_entries(solid: SolidSpec) -> list[AtlasEntry]:
    verts = solid.vertices
    nv = len(verts)
    entries: list[AtlasEntry] = []
    seen: set = set()
    klein_found = False

    def consider(idx, arcs):
        nonlocal klein_found
        key = _canonical_key([verts[i] for i in idx], arcs, solid.rotations)
        if key in seen:
            return
        new_entries, klein = _assemble(solid, idx, arcs)
        if new_entries or klein:
            seen.add(key)
        klein_found = klein_found or klein
        entries.extend(new_entries)

    antipodal = {
        i: j
        for i in range(nv)
        for j in range(nv)
        if i != j and np.linalg.norm(verts[i] + verts[j]) < 1e-7
    }

    # generic triples: no antipodal pair, not on one great circle
    for i in range(nv):
        for j in range(i + 1, nv):
            if antipodal.get(i) == j:
                continue
            for k in range(j + 1, nv):
                if antipodal.get(i) == k or antipodal.get(j) == k:
                    continue
                if abs(np.linalg.det(np.stack([verts[i], verts[j], verts[k]]))) < 1e-9:
                    continue
                for bits in range(8):
                    try:
                        arcs = [
                            arc_between(verts[i], verts[j], major=bool(bits & 1)),
                            arc_between(verts[j], verts[k], major=bool(bits & 2)),
                            arc_between(verts[k], verts[i], major=bool(bits & 4)),
                        ]
                    except InvalidInputError:
                        break
                    consider((i, j, k), arcs)

    # digons: an antipodal pair plus a flat vertex, closed by a half circle
    # through a marked point m on the common equator
    for i, j in antipodal.items():
        if i > j:
            continue
        p = verts[i]
        for k in range(nv):
            if k in (i, j):
                continue
            w_vert = verts[k]
            for m in solid.q_points:
                if abs(float(np.dot(m, p))) > 1e-7:
                    continue
                long_arc = Arc(start=tuple(-p), w=tuple(m), sweep=math.pi)
                try:
                    arcs = [
                        arc_between(p, w_vert),
                        arc_between(w_vert, -p),
                        long_arc,
                    ]
                except InvalidInputError:
                    continue
                consider((i, k, j), arcs)

    # congruent triangles can occupy rotation-inequivalent positions on the
    # solid; collapse them to one class per congruence type
    unique: dict = {}
    for e in entries:
        profile = tuple(
            (round(a.sweep, 6), e.distances[i][0], e.distances[i][1])
            for i, a in enumerate(e.triangle.arcs)
        )
        key = (e.family, e.n, e.note, _cyclic_min(profile))
        unique.setdefault(key, e)
    entries = list(unique.values())

    if klein_found:
        for n in (Fraction(1, 2), Fraction(3, 2)):
            entries.append(
                AtlasEntry(
                    family="klein_four",
                    n=n,
                    distances=None,
                    complement=(n > 1),
                )
            )
    return entries


def _dihedral_entries(solid: SolidSpec) -> list[AtlasEntry]:
    n = solid.n_vertices
    seen = set()
    entries = []
    for k1 in range(1, n - 1):
        for k2 in range(1, n - k1):
            k3 = n - k1 - k2
            gaps = (k1, k2, k3)
            if math.gcd(math.gcd(k1, k2), k3) != 1:
                continue
            key = _cyclic_min(gaps)
            if key in seen:
                continue
            seen.add(key)
            entries.append(
                AtlasEntry(
                    family="dihedral",
                    n=Fraction(1),
                    distances=tuple((g, False) for g in gaps),
                    triangle=_dihedral_triangle(gaps),
                )
            )
    return entries


def _dihedral_triangle(gaps) -> SphericalTriangle:
    k = sum(gaps)
    angles = [0, gaps[0], gaps[0] + gaps[1]]
    vertices = [
        np.array([math.cos(2 * math.pi * a / k), math.sin(2 * math.pi * a / k), 0.0])
        for a in angles
    ]
    tangent = lambda a: np.array(
        [-math.sin(2 * math.pi * a / k), math.cos(2 * math.pi * a / k), 0.0]
    )
    arcs = [
        Arc(start=tuple(vertices[0]), w=tuple(tangent(angles[0])), sweep=2 * math.pi * gaps[0] / k),
        Arc(start=tuple(vertices[1]), w=tuple(tangent(angles[1])), sweep=2 * math.pi * gaps[1] / k),
        Arc(start=tuple(vertices[2]), w=tuple(tangent(angles[2])), sweep=2 * math.pi * gaps[2] / k),
    ]
    return SphericalTriangle(
        theta=(Fraction(1), Fraction(1), Fraction(1)),
        lengths=tuple(arcs[(i + 1) % 3].sweep for i in range(3)),
        vertices=vertices,
        arcs=arcs,
        q_points=[arcs[(i + 1) % 3].midpoint for i in range(3)],
    )


def enumerate_basic(solid: SolidSpec | str) -> list[AtlasEntry]:
    """All basic-triangle classes with vertices on the given configuration.

    For Platonic solids this returns the concrete classes (plus Klein-four
    markers when half-integral configurations appear); for n-gons it returns
    one flat triangle per coprime gap triple up to rotation.
    """
    if isinstance(solid, str):
        solid = build_solid(solid)
    if solid.name.startswith("n_gon"):
        return _dihedral_entries(solid)
    return _platonic_entries(solid)


def realize_geometry(entry: AtlasEntry) -> SphericalTriangle:
    """Concrete vertex/arc data for an atlas entry."""
    if entry.triangle is None:
        raise InvalidInputError(f"entry {entry.family} n={entry.n} has no geometry")
    return entry.triangle


def atlas_table() -> list[dict]:
    """Aggregate the basic-triangle classes of all marked configurations.

    Rows carry (family, sorted n values, edge distances, note); triangle
    classes realised at several n (a class and its complement) share a row.
    The dihedral family collapses to a single marker row since its classes
    are parametrised by coprime gap triples rather than finitely listed.
    """
    rows: dict = {}
    order = []
    for name in ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"):
        for entry in enumerate_basic(name):
            dist = _cyclic_min(entry.distances) if entry.distances else entry.distances
            base = min(entry.n, 2 - entry.n)
            key = (entry.family, dist, entry.note, base)
            if key not in rows:
                rows[key] = {
                    "family": entry.family,
                    "n_values": set(),
                    "distances": entry.distances,
                    "note": entry.note,
                }
                order.append(key)
            rows[key]["n_values"].add(entry.n)
    out = [dict(rows[k], n_values=tuple(sorted(rows[k]["n_values"]))) for k in order]
    out.append(
        {
            "family": "dihedral",
            "n_values": (Fraction(1),),
            "distances": "k1,k2,k3 coprime",
            "note": None,
        }
    )
    return out
