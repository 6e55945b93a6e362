"""Antiprisms, edge-twist moves, validity checking and census enumeration.

Every ideal right-angled polyhedron is an antiprism or comes from one by a
sequence of edge twists, so the census is the closure of the antiprisms under
twisting, deduplicated by canonical code and filtered by the right-angled
realizability test.
"""

from __future__ import annotations

import itertools
import logging
import sys
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .planar import PlanarGraph, StructureError, canonical_code, trace_faces

log = logging.getLogger(__name__)

Edge = Tuple[int, int]


class TwistError(ValueError):
    """The requested edge pair does not admit an edge twist."""


class EnumerationOverflow(RuntimeError):
    def __init__(self, level: int, limit: int):
        super().__init__(f"enumeration exceeded {limit} graphs at face level {level}")
        self.level = level
        self.limit = limit


@dataclass(frozen=True)
class EdgePair:
    """Two vertex-disjoint edges on the boundary of one face.

    ``e1`` and ``e2`` are darts oriented along the face traversal, and
    ``face`` is the face's vertex cycle.
    """

    e1: Edge
    e2: Edge
    face: Tuple[int, ...]


@dataclass(frozen=True)
class ValidityReport:
    is_valid: bool
    reason: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.is_valid

    def describe(self) -> str:
        if self.is_valid:
            return "valid"
        return f"{self.reason}: {self.witness}"


NOT_4_VALENT = "not 4-valent"
NOT_3_CONNECTED = "not 3-connected"
NONFACIAL_4_CYCLE = "non-facial 4-cycle in dual"


# -- constructors --------------------------------------------------------------


def antiprism(n: int) -> PlanarGraph:
    """The n-antiprism A(n): 2n vertices, two n-gons and 2n triangles."""
    if n < 3:
        raise ValueError(f"antiprism needs n >= 3, got {n}")
    # top ring t_i = i, bottom ring b_i = n + i; triangles (t_i, t_i+1, b_i+1)
    # and (t_i, b_i, b_i+1)
    rot = []
    for i in range(n):
        rot.append(((i + 1) % n, n + (i + 1) % n, n + i, (i - 1) % n))
    for i in range(n):
        rot.append((n + (i - 1) % n, (i - 1) % n, i, n + (i + 1) % n))
    return PlanarGraph(tuple(rot))


def face_edge_pairs(g: PlanarGraph) -> Iterator[EdgePair]:
    """All pairs of vertex-disjoint edges sharing a face (faces of length >= 4)."""
    for face in g.faces:
        k = len(face)
        if k < 4:
            continue
        for i in range(k):
            for j in range(i + 2, k):
                if (j + 1) % k == i:
                    continue
                yield EdgePair((face[i], face[(i + 1) % k]), (face[j], face[(j + 1) % k]), face)


def find_edge_pair(g: PlanarGraph, e1: Edge, e2: Edge) -> EdgePair:
    """Locate a face carrying both edges and orient them along it."""
    want = {frozenset(e1), frozenset(e2)}
    for face in g.faces:
        k = len(face)
        darts = {frozenset((face[i], face[(i + 1) % k])): (face[i], face[(i + 1) % k]) for i in range(k)}
        if want <= darts.keys():
            return EdgePair(darts[frozenset(e1)], darts[frozenset(e2)], face)
    raise TwistError(f"edges {e1} and {e2} do not lie on a common face")


def edge_twist(g: PlanarGraph, p: EdgePair) -> PlanarGraph:
    """Delete the two edges of ``p`` and join a new vertex to their ends."""
    (a, b), (c, d) = p.e1, p.e2
    if len({a, b, c, d}) != 4:
        raise TwistError(f"edges {p.e1} and {p.e2} share a vertex")
    k = len(p.face)
    darts = {(p.face[i], p.face[(i + 1) % k]) for i in range(k)}
    if (a, b) not in darts or (c, d) not in darts:
        raise TwistError(f"edges {p.e1} and {p.e2} are not oriented darts of face {p.face}")
    if not any(_same_cycle(p.face, f) for f in g.faces):
        raise TwistError(f"{p.face} is not a face of the graph")
    v = g.vertex_count
    swap = {(a, b): v, (b, a): v, (c, d): v, (d, c): v}
    rot = [tuple(swap.get((x, w), w) for w in nbrs) for x, nbrs in enumerate(g.rotation)]
    rot.append((a, d, c, b))
    return PlanarGraph(tuple(rot))


def _same_cycle(f: Sequence[int], h: Sequence[int]) -> bool:
    if len(f) != len(h) or f[0] not in h:
        return False
    s = list(h).index(f[0])
    return tuple(f) == tuple(h[s:]) + tuple(h[:s])


def twisted_antiprism(n: int) -> PlanarGraph:
    """A(n)*: twist two edges of an n-gon of A(n) that are adjacent through an edge."""
    if n < 4:
        raise ValueError(f"twisted antiprism needs n >= 4, got {n}")
    g = antiprism(n)
    top = next(f for f in g.faces if len(f) == n and 0 in f)
    k = len(top)
    return edge_twist(g, EdgePair((top[0], top[1]), (top[2], top[3 % k]), top))


# -- validity --------------------------------------------------------------------


def _connected_without(adj: Sequence[Sequence[int]], removed: set) -> bool:
    n = len(adj)
    start = next(v for v in range(n) if v not in removed)
    seen = {start} | removed
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def separating_pair(g: PlanarGraph) -> Optional[Tuple[int, ...]]:
    """A set of at most two vertices whose removal disconnects ``g``, if any."""
    adj = g.rotation
    n = g.vertex_count
    if not _connected_without(adj, set()):
        return ()
    for x in range(n):
        if not _connected_without(adj, {x}):
            return (x,)
    for x, y in itertools.combinations(range(n), 2):
        if n - 2 > 1 and not _connected_without(adj, {x, y}):
            return (x, y)
    return None


def nonfacial_dual_4_cycles(g: PlanarGraph) -> List[Tuple[int, int, int, int]]:
    """All 4-cycles of the dual graph that do not bound a dual face.

    Dual vertices are face indices of ``g``; dual faces are the corners around
    each primal vertex.
    """
    fs = trace_faces(g)
    nf = len(fs.faces)
    nbr = [set() for _ in range(nf)]
    for (u, w), f in fs.dart_face.items():
        nbr[f].add(fs.dart_face[(w, u)])
    facial = set()
    for v, nbrs in enumerate(g.rotation):
        around = [fs.dart_face[(u, v)] for u in nbrs]
        k = len(around)
        facial.add(frozenset(frozenset((around[i], around[(i + 1) % k])) for i in range(k)))
    found = []
    seen = set()
    for x in range(nf):
        for z in range(x + 1, nf):
            common = sorted(nbr[x] & nbr[z])
            for y, w in itertools.combinations(common, 2):
                key = frozenset(frozenset(e) for e in ((x, y), (y, z), (z, w), (w, x)))
                if key in seen:
                    continue
                seen.add(key)
                if key not in facial:
                    found.append((x, y, z, w))
    return found


def check_validity(g: PlanarGraph) -> ValidityReport:
    """Right-angled realizability test (Rivin's criterion with all weights pi/2).

    With uniform weights the face condition reduces to 4-valence, and the cycle
    condition can only fail on dual 4-cycles that are not faces.
    """
    for v, nbrs in enumerate(g.rotation):
        if len(nbrs) != 4:
            return ValidityReport(False, NOT_4_VALENT, (v,))
    try:
        trace_faces(g)
    except StructureError as exc:
        return ValidityReport(False, "not spherical", (str(exc),))
    cut = separating_pair(g)
    if cut is not None:
        return ValidityReport(False, NOT_3_CONNECTED, cut)
    cycles = nonfacial_dual_4_cycles(g)
    if cycles:
        return ValidityReport(False, NONFACIAL_4_CYCLE, cycles[0])
    return ValidityReport(True)


# -- enumeration -------------------------------------------------------------------


def _twist_children(g: PlanarGraph) -> Iterator[PlanarGraph]:
    for p in face_edge_pairs(g):
        yield edge_twist(g, p)


def enumerate_polyhedra(
    max_faces: int,
    sink: Optional[Callable[[PlanarGraph], None]] = None,
    *,
    seeds: Iterable[PlanarGraph] = (),
    max_graphs: Optional[int] = None,
    progress: bool = False,
    min_faces: int = 8,
) -> Dict[int, int]:
    """Enumerate ideal right-angled polyhedra with at most ``max_faces`` faces.

    Each combinatorial type is passed to ``sink`` exactly once, level by
    level and in canonical-code order within a level.  Returns the number of
    polyhedra per face count for ``min_faces <= F <= max_faces``.
    """
    if max_faces < 8:
        raise ValueError(f"max_faces must be at least 8, got {max_faces}")
    levels: Dict[int, Dict[bytes, PlanarGraph]] = {f: {} for f in range(8, max_faces + 1)}
    rejected: set = set()
    for n in range(3, (max_faces - 2) // 2 + 1):
        g = antiprism(n)
        levels[2 * n + 2][canonical_code(g)] = g
    for g in seeds:
        f = g.vertex_count + 2
        if f in levels and check_validity(g):
            levels[f].setdefault(canonical_code(g), g)

    counts: Dict[int, int] = {}
    total = 0
    for f in range(8, max_faces + 1):
        current = levels.pop(f)
        nxt = levels.get(f + 1)
        for code in sorted(current):
            g = current[code]
            if f >= min_faces and sink is not None:
                sink(g)
            if nxt is None:
                continue
            for child in _twist_children(g):
                c = canonical_code(child)
                if c in nxt or c in rejected:
                    continue
                if check_validity(child):
                    nxt[c] = child
                else:
                    rejected.add(c)
            if max_graphs is not None and len(nxt) > max_graphs:
                raise EnumerationOverflow(f + 1, max_graphs)
        rejected.clear()
        total += len(current)
        if f >= min_faces:
            counts[f] = len(current)
        if progress:
            print(f"level={f} found={len(current)}", file=sys.stderr, flush=True)
        if max_graphs is not None and total > max_graphs:
            raise EnumerationOverflow(f, max_graphs)
    return counts


def census_graphs(max_faces: int, **kwargs) -> List[PlanarGraph]:
    out: List[PlanarGraph] = []
    enumerate_polyhedra(max_faces, out.append, **kwargs)
    return out
