"""Named polyhedra built from vertex coordinates of convex realizations."""

from __future__ import annotations

import math
from collections import defaultdict
from typing import Dict, List, Sequence

import numpy as np
from scipy.spatial import ConvexHull

from .planar import PlanarGraph, trace_faces


def from_convex_points(points: Sequence[Sequence[float]], decimals: int = 6) -> PlanarGraph:
    """Combinatorial type of the convex hull of ``points`` (all must be vertices)."""
    pts = np.asarray(points, dtype=float)
    hull = ConvexHull(pts)
    if len(hull.vertices) != len(pts):
        raise ValueError("every point must be a hull vertex")
    planes: Dict[tuple, set] = defaultdict(set)
    for simplex, eq in zip(hull.simplices, hull.equations):
        planes[tuple(np.round(eq, decimals))].update(int(i) for i in simplex)
    center = pts.mean(axis=0)
    nbrs: List[set] = [set() for _ in pts]
    for key, verts in planes.items():
        normal = np.array(key[:3])
        vs = sorted(verts)
        c = pts[vs].mean(axis=0)
        u = pts[vs[0]] - c
        u /= np.linalg.norm(u)
        w = np.cross(normal, u)
        ring = sorted(vs, key=lambda i: math.atan2((pts[i] - c) @ w, (pts[i] - c) @ u))
        for a, b in zip(ring, ring[1:] + ring[:1]):
            nbrs[a].add(b)
            nbrs[b].add(a)
    rot = []
    for v, ns in enumerate(nbrs):
        out = pts[v] - center
        out /= np.linalg.norm(out)
        ref = pts[min(ns)] - pts[v]
        u = ref - (ref @ out) * out
        u /= np.linalg.norm(u)
        w = np.cross(out, u)
        # clockwise seen from outside
        order = sorted(ns, key=lambda i: -math.atan2((pts[i] - pts[v]) @ w, (pts[i] - pts[v]) @ u))
        rot.append(tuple(order))
    g = PlanarGraph(tuple(rot))
    trace_faces(g)
    return g


_S = 1.0 + math.sqrt(2.0)


def _octagon_ring(z: float) -> List[tuple]:
    return [(sx * a, sy * b, z) for a, b in ((1.0, _S), (_S, 1.0)) for sx in (1, -1) for sy in (1, -1)]


def rhombicuboctahedron() -> PlanarGraph:
    """26 faces (8 triangles, 18 quadrilaterals); every vertex of type 3.4.4.4."""
    top = [(sx, sy, _S) for sx in (1, -1) for sy in (1, -1)]
    bottom = [(sx, sy, -_S) for sx in (1, -1) for sy in (1, -1)]
    return from_convex_points(top + _octagon_ring(1.0) + _octagon_ring(-1.0) + bottom)


def pseudo_rhombicuboctahedron() -> PlanarGraph:
    """The rhombicuboctahedron with its lower cupola turned by 45 degrees."""
    r = math.sqrt(2.0)
    top = [(sx, sy, _S) for sx in (1, -1) for sy in (1, -1)]
    bottom = [(r, 0.0, -_S), (-r, 0.0, -_S), (0.0, r, -_S), (0.0, -r, -_S)]
    return from_convex_points(top + _octagon_ring(1.0) + _octagon_ring(-1.0) + bottom)


def elongated_square_bipyramid() -> PlanarGraph:
    """4-valent and 3-connected, but its four side quadrilaterals form a
    separating belt, so it has no ideal right-angled realization."""
    cube = [(x, y, z) for x in (1, -1) for y in (1, -1) for z in (1, -1)]
    return from_convex_points(cube + [(0, 0, 2), (0, 0, -2)])
