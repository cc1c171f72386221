"""Platonic solids, n-gon configurations, and their marked point sets.

Each solid carries its vertex set, edge graph, rotation group, and the set Q
of admissible arc-midpoints (a solid-dependent mixture of vertices, edge
midpoints, and face centers) used when enumerating spherical triangles whose
edge midpoints must land on symmetry axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .geom import (
    InvalidInputError,
    close_group,
    quat_from_axis_angle,
    quat_to_rotation,
    unit,
)

PHI = (1.0 + math.sqrt(5.0)) / 2.0

PLATONIC_NAMES = ("tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron")


@dataclass
class SolidSpec:
    """A vertex configuration on S^2 with its symmetry data."""

    name: str
    vertices: np.ndarray                      # (n, 3) unit vectors
    edges: list[tuple[int, int]]              # index pairs, i < j
    edge_midpoints: np.ndarray                # (e, 3) unit vectors
    face_centers: np.ndarray                  # (f, 3) unit vectors; may be empty
    rotations: list[np.ndarray] = field(default_factory=list)
    q_points: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))
    _dist: np.ndarray | None = None

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def distance_matrix(self) -> np.ndarray:
        if self._dist is None:
            n = self.n_vertices
            d = np.full((n, n), -1, dtype=int)
            adj: list[list[int]] = [[] for _ in range(n)]
            for i, j in self.edges:
                adj[i].append(j)
                adj[j].append(i)
            for s in range(n):
                d[s, s] = 0
                queue = [s]
                while queue:
                    nxt = []
                    for u in queue:
                        for v in adj[u]:
                            if d[s, v] < 0:
                                d[s, v] = d[s, u] + 1
                                nxt.append(v)
                    queue = nxt
            self._dist = d
        return self._dist


def graph_distance(solid: SolidSpec, i: int, j: int) -> int:
    """Number of edges on a shortest path between two vertices."""
    return int(solid.distance_matrix()[i, j])


def _edges_from_min_distance(vertices: np.ndarray) -> list[tuple[int, int]]:
    n = len(vertices)
    d2 = np.array(
        [
            [np.dot(vertices[i] - vertices[j], vertices[i] - vertices[j]) for j in range(n)]
            for i in range(n)
        ]
    )
    positive = d2[d2 > 1e-9]
    dmin = positive.min()
    return [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if abs(d2[i, j] - dmin) < 1e-6
    ]


def _midpoints(vertices: np.ndarray, edges: list[tuple[int, int]]) -> np.ndarray:
    return np.array([unit(vertices[i] + vertices[j]) for i, j in edges])


def _dedup_axes(points: np.ndarray) -> np.ndarray:
    out: list[np.ndarray] = []
    for p in points:
        if all(np.linalg.norm(p - q) > 1e-7 for q in out):
            out.append(p)
    return np.array(out)


def _rotation_group(generators: list[np.ndarray]) -> list[np.ndarray]:
    return close_group(generators, tol=1e-6, cap=1024).elements


def _vertices(name: str) -> np.ndarray:
    if name == "tetrahedron":
        raw = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    elif name == "octahedron":
        raw = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
    elif name == "cube":
        raw = [(sx, sy, sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
    elif name == "icosahedron":
        raw = []
        for a, b in [(1, PHI), (1, -PHI), (-1, PHI), (-1, -PHI)]:
            raw.extend([(0, a, b), (a, b, 0), (b, 0, a)])
    elif name == "dodecahedron":
        # dual of the icosahedron above: its 20 face centers, normalised,
        # so both solids share one rotation group in the same orientation
        ico = _vertices("icosahedron")
        edges = {tuple(e) for e in _edges_from_min_distance(ico)}
        raw = []
        for i in range(12):
            for j in range(i + 1, 12):
                for k in range(j + 1, 12):
                    if {(i, j), (i, k), (j, k)} <= edges:
                        raw.append(tuple(ico[i] + ico[j] + ico[k]))
    else:
        raise InvalidInputError(f"unknown solid {name!r}")
    return np.array([unit(np.array(v, dtype=float)) for v in raw])


def _generators(name: str, vertices: np.ndarray) -> list[np.ndarray]:
    if name == "tetrahedron":
        qs = [
            quat_from_axis_angle((0, 0, 1), math.pi),
            quat_from_axis_angle((1, 1, 1), 2 * math.pi / 3),
        ]
    elif name in ("octahedron", "cube"):
        qs = [
            quat_from_axis_angle((0, 0, 1), math.pi / 2),
            quat_from_axis_angle((1, 0, 0), math.pi / 2),
        ]
    else:
        # icosahedron / dodecahedron share the rotation group; use an
        # icosahedral vertex axis (five-fold) and an edge axis (two-fold).
        ico = _vertices("icosahedron") if name == "dodecahedron" else vertices
        edges = _edges_from_min_distance(ico)
        mid = unit(ico[edges[0][0]] + ico[edges[0][1]])
        qs = [
            quat_from_axis_angle(ico[0], 2 * math.pi / 5),
            quat_from_axis_angle(mid, math.pi),
        ]
    return [quat_to_rotation(q) for q in qs]


def compute_Q(solid: SolidSpec) -> np.ndarray:
    """Admissible arc-midpoint set for basic triangles on this solid.

    octahedron: vertices and edge midpoints; cube: edge midpoints and face
    centers; icosahedron/dodecahedron/tetrahedron: edge midpoints only;
    n-gon: equator vertices and edge midpoints, plus the poles when the
    gon order is even.
    """
    name = solid.name
    if name == "octahedron":
        pts = np.vstack([solid.vertices, solid.edge_midpoints])
    elif name == "cube":
        pts = np.vstack([solid.edge_midpoints, solid.face_centers])
    elif name in ("icosahedron", "dodecahedron", "tetrahedron"):
        pts = solid.edge_midpoints
    elif name.startswith("n_gon"):
        pts = np.vstack([solid.vertices, solid.edge_midpoints])
        if solid.n_vertices % 2 == 0:
            pts = np.vstack([pts, [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]]])
    else:
        raise InvalidInputError(f"unknown solid {name!r}")
    return _dedup_axes(pts)


@lru_cache(maxsize=None)
def build_solid(name: str) -> SolidSpec:
    """Construct a Platonic solid or an equatorial n-gon ("n_gon:<N>")."""
    if name.startswith("n_gon"):
        try:
            n = int(name.split(":")[1])
        except (IndexError, ValueError) as exc:
            raise InvalidInputError("n-gon spec must look like 'n_gon:5'") from exc
        return build_n_gon(n)
    vertices = _vertices(name)
    edges = _edges_from_min_distance(vertices)
    dual = {
        "tetrahedron": "tetrahedron",
        "octahedron": "cube",
        "cube": "octahedron",
        "icosahedron": "dodecahedron",
        "dodecahedron": "icosahedron",
    }
    faces = _vertices(dual[name])
    if name == "tetrahedron":
        faces = -faces
    solid = SolidSpec(
        name=name,
        vertices=vertices,
        edges=edges,
        edge_midpoints=_midpoints(vertices, edges),
        face_centers=faces,
        rotations=_rotation_group(_generators(name, vertices)),
    )
    solid.q_points = compute_Q(solid)
    return solid


@lru_cache(maxsize=None)
def build_n_gon(n: int) -> SolidSpec:
    """N equally spaced marked points on the equator."""
    if n < 3:
        raise InvalidInputError("n-gon needs at least 3 vertices")
    vertices = np.array(
        [
            [math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n), 0.0]
            for k in range(n)
        ]
    )
    edges = [(k, (k + 1) % n) for k in range(n)]
    edges = [(min(a, b), max(a, b)) for a, b in edges]
    gens = [
        quat_to_rotation(quat_from_axis_angle((0, 0, 1), 2 * math.pi / n)),
        quat_to_rotation(quat_from_axis_angle((1, 0, 0), math.pi)),
    ]
    solid = SolidSpec(
        name=f"n_gon:{n}",
        vertices=vertices,
        edges=edges,
        edge_midpoints=_midpoints(vertices, edges),
        face_centers=np.empty((0, 3)),
        rotations=_rotation_group(gens),
    )
    solid.q_points = compute_Q(solid)
    return solid
