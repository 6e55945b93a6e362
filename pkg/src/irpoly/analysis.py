"""Volume bounds, face gluing, isolated-triangle polyhedra and the volume spectrum."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .enumeration import antiprism, twisted_antiprism
from .lobachevsky import V8
from .planar import PlanarGraph, StructureError, canonical_code, mirror, trace_faces

VOLUME_RESOLUTION = 1e-6


class GlueError(ValueError):
    pass


class IncompleteCensusError(RuntimeError):
    def __init__(self, missing: Sequence[int], cutoff: float):
        self.missing = list(missing)
        super().__init__(
            f"census incomplete for cutoff {cutoff:.6f}: face counts {self.missing} are required"
        )


# -- bounds ------------------------------------------------------------------------


def atkinson_bounds(n_vertices: int) -> Tuple[float, float]:
    """Atkinson's two-sided volume bounds for N ideal vertices."""
    if n_vertices < 6:
        raise ValueError(f"an ideal right-angled polyhedron has at least 6 vertices, got {n_vertices}")
    return (n_vertices - 2) * V8 / 4, (n_vertices - 4) * V8 / 2


def _is_octahedron(g: PlanarGraph) -> bool:
    return g.vertex_count == 6 and all(len(f) == 3 for f in g.faces)


def improved_upper_bound(g: PlanarGraph) -> Optional[float]:
    """Sharpest bound (N - n1/2 - n2/2) * v8/2 over pairs of faces with >= 4 sides."""
    if _is_octahedron(g):
        raise ValueError("the two-face bound does not apply to the octahedron")
    big = sorted((len(f) for f in g.faces if len(f) >= 4), reverse=True)
    if len(big) < 2:
        return None
    # the minimum over pairs is attained by the two largest faces
    return (g.vertex_count - big[0] / 2 - big[1] / 2) * V8 / 2


def quad_upper_bound(g: PlanarGraph) -> Optional[float]:
    """(N - 5) * v8/2 for polyhedra with only triangles and quadrilaterals.

    Applied only when both the face count and the vertex count are at least 17.
    """
    n = g.vertex_count
    faces = g.faces
    if any(len(f) > 4 for f in faces) or len(faces) < 17 or n < 17:
        return None
    return (n - 5) * V8 / 2


@dataclass(frozen=True)
class BoundsReport:
    vertex_count: int
    atkinson_lower: float
    atkinson_upper: float
    improved_upper: Optional[float]
    quad_upper: Optional[float]

    def violations(self, volume: float, eps: float = 1e-7) -> List[str]:
        # eps covers volumes read back from 9-significant-digit text
        out = []
        if volume < self.atkinson_lower - eps:
            out.append("atkinson_lower")
        if volume > self.atkinson_upper + eps:
            out.append("atkinson_upper")
        if self.improved_upper is not None and volume > self.improved_upper + eps:
            out.append("improved_upper")
        # strict inequality
        if self.quad_upper is not None and volume >= self.quad_upper:
            out.append("quad_upper")
        return out


def bounds_report(g: PlanarGraph) -> BoundsReport:
    lo, hi = atkinson_bounds(g.vertex_count)
    improved = None if _is_octahedron(g) else improved_upper_bound(g)
    return BoundsReport(g.vertex_count, lo, hi, improved, quad_upper_bound(g))


# -- gluing ---------------------------------------------------------------------------


def _find_face(g: PlanarGraph, face: Sequence[int]) -> Tuple[int, ...]:
    want = set(face)
    for f in g.faces:
        if len(f) == len(face) and set(f) == want:
            return f
    raise GlueError(f"{tuple(face)} is not a face")


def glue_along_face(
    g1: PlanarGraph,
    f1: Sequence[int],
    g2: PlanarGraph,
    f2: Sequence[int],
    matching: Optional[Mapping[int, int]] = None,
) -> PlanarGraph:
    """Glue two right-angled polyhedra along congruent faces.

    ``matching`` sends each vertex of ``f1`` to a vertex of ``f2`` and must
    reverse the traversal direction (the two faces are seen from opposite
    sides).  By default ``f1[i]`` goes to ``f2[-i]``.  The edges of the glued
    face disappear because the dihedral angles there become pi, so the faces
    on either side of each such edge merge.  Vertices of ``g1`` keep their
    labels; the remaining vertices of ``g2`` follow in order.
    """
    face1 = _find_face(g1, f1)
    face2 = _find_face(g2, f2)
    k = len(face1)
    if k != len(face2):
        raise GlueError(f"face lengths differ: {k} vs {len(face2)}")
    if matching is None:
        s = face1.index(f1[0])
        face1 = face1[s:] + face1[:s]
        t = face2.index(f2[0])
        face2 = face2[t:] + face2[:t]
        matching = {face1[i]: face2[-i % k] for i in range(k)}
    if set(matching) != set(face1) or set(matching.values()) != set(face2):
        raise GlueError("matching is not a bijection between the two faces")
    darts2 = {(face2[i], face2[(i + 1) % k]) for i in range(k)}
    for i in range(k):
        a, b = face1[i], face1[(i + 1) % k]
        if (matching[b], matching[a]) not in darts2:
            raise GlueError("matching does not reverse the face orientation")

    n1 = g1.vertex_count
    inverse = {w: v for v, w in matching.items()}
    label2: Dict[int, int] = {}
    nxt = n1
    for w in range(g2.vertex_count):
        if w in inverse:
            label2[w] = inverse[w]
        else:
            label2[w] = nxt
            nxt += 1

    rot: List[Tuple[int, ...]] = [()] * nxt
    on_face = set(face1)
    for v in range(n1):
        if v not in on_face:
            rot[v] = g1.rotation[v]
    for w in range(g2.vertex_count):
        if w not in inverse:
            rot[label2[w]] = tuple(label2[x] for x in g2.rotation[w])
    for i, v in enumerate(face1):
        prev_v, next_v = face1[i - 1], face1[(i + 1) % k]
        r1 = g1.rotation[v]
        s = r1.index(next_v)
        r1 = r1[s:] + r1[:s]
        if r1[-1] != prev_v:
            raise GlueError(f"face {face1} is not a face corner at vertex {v}")
        w = matching[v]
        r2 = g2.rotation[w]
        s = r2.index(matching[prev_v])
        r2 = r2[s:] + r2[:s]
        if r2[-1] != matching[next_v]:
            raise GlueError(f"face {face2} is not a face corner at vertex {w}")
        rot[v] = tuple(r1[1:-1]) + tuple(label2[x] for x in r2[1:-1])
    try:
        g = PlanarGraph(tuple(rot))
        trace_faces(g)
    except StructureError as exc:
        raise GlueError(f"glued complex is not a simple spherical graph: {exc}") from None
    return g


def double_along_face(g: PlanarGraph, face: Sequence[int]) -> PlanarGraph:
    """Glue ``g`` to its mirror image along ``face`` (reflection in the face plane)."""
    f = _find_face(g, face)
    m = mirror(g)
    mf = _find_face(m, f)
    return glue_along_face(g, f, m, mf, {v: v for v in f})


# -- isolated triangles -------------------------------------------------------------


def is_itr(g: PlanarGraph) -> bool:
    """True when no two triangular faces share a vertex."""
    used: set = set()
    for f in g.faces:
        if len(f) == 3:
            if used.intersection(f):
                return False
            used.update(f)
    return True


def itr_face_bound(p3: int) -> int:
    """Smallest face count an ITR-polyhedron with ``p3`` triangles can have."""
    if p3 < 8:
        raise ValueError(f"an ideal right-angled polyhedron has at least 8 triangles, got {p3}")
    return 3 * p3 + 2


def itr_double(g: PlanarGraph, triangle: Sequence[int]) -> PlanarGraph:
    if not is_itr(g):
        raise ValueError("itr_double needs an ITR-polyhedron")
    if len(triangle) != 3:
        raise ValueError(f"{tuple(triangle)} is not a triangle")
    return double_along_face(g, triangle)


# -- classification and spectrum ----------------------------------------------------


@dataclass(frozen=True)
class Flags:
    is_antiprism: bool
    is_twisted_antiprism: bool
    is_itr: bool

    @property
    def label(self) -> str:
        if self.is_antiprism:
            return "antiprism"
        if self.is_twisted_antiprism:
            return "twisted"
        return "other"


def classify(g: PlanarGraph, code: Optional[bytes] = None) -> Flags:
    f = g.vertex_count + 2
    code = canonical_code(g) if code is None else code
    anti = f % 2 == 0 and f >= 8 and code == canonical_code(antiprism((f - 2) // 2))
    twisted = f % 2 == 1 and f >= 11 and code == canonical_code(twisted_antiprism((f - 3) // 2))
    return Flags(anti, twisted, is_itr(g))


def distinct_volumes(volumes: Iterable[float], resolution: float = VOLUME_RESOLUTION) -> List[float]:
    """Sorted values with neighbours closer than ``resolution`` merged."""
    out: List[float] = []
    for v in sorted(volumes):
        if not out or v - out[-1] >= resolution:
            out.append(v)
    return out


def required_face_counts(cutoff: float) -> List[int]:
    """Face counts that may realize a volume at or below ``cutoff``.

    The lower bound (F - 4) v8/4 is attained only by the octahedron; for
    F > 8 it is strict, so a face count whose bound reaches the cutoff (to
    within the volume resolution) cannot contribute.
    """
    out = []
    f = 8
    while True:
        lower = (f - 4) * V8 / 4
        if f == 8:
            if lower > cutoff + VOLUME_RESOLUTION:
                break
        elif lower >= cutoff - VOLUME_RESOLUTION:
            break
        out.append(f)
        f += 1
    return out


def certified_cutoff(max_faces: int) -> float:
    """Largest cutoff for which a census complete up to ``max_faces`` suffices."""
    return (max_faces + 1 - 4) * V8 / 4 - 2 * VOLUME_RESOLUTION


def volume_spectrum(census, cutoff: float) -> List[float]:
    """Distinct volumes up to ``cutoff`` from a census known complete to ``census.max_faces``."""
    missing = [f for f in required_face_counts(cutoff) if f > census.max_faces]
    if missing:
        raise IncompleteCensusError(missing, cutoff)
    vols = [r.volume for r in census.records if r.volume <= cutoff + VOLUME_RESOLUTION]
    return distinct_volumes(vols)


def conjecture_report(records) -> Dict[int, Tuple[bool, float, str]]:
    """Per face count: whether the minimum volume is the (twisted) antiprism."""
    by_f: Dict[int, List] = {}
    for r in records:
        by_f.setdefault(r.faces, []).append(r)
    out = {}
    for f, rs in sorted(by_f.items()):
        best = min(rs, key=lambda r: r.volume)
        expected = [r for r in rs if (r.is_antiprism if f % 2 == 0 else r.is_twisted_antiprism)]
        ok = bool(expected) and abs(expected[0].volume - best.volume) < VOLUME_RESOLUTION
        out[f] = (ok, best.volume, best.code)
    return out

