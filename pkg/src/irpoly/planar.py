"""Planar rotation systems, faces, duals, canonical codes and file formats.

A :class:`PlanarGraph` stores, for every vertex, the cyclic order of its
neighbours in the embedding.  Faces are traced with the rule

    next(u -> w) = (w -> rotation[w][index of u in rotation[w] + 1])

so every directed edge (dart) belongs to exactly one face.  Vertices are
0-based in memory and 1-based in every serialized form.
"""

from __future__ import annotations

import io
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import BinaryIO, Dict, Iterable, Iterator, List, Sequence, TextIO, Tuple

PLANAR_CODE_HEADER = b">>planar_code<<"

Rotation = Tuple[Tuple[int, ...], ...]
Face = Tuple[int, ...]


class StructureError(ValueError):
    """Raised when a rotation system is malformed or not spherical."""


class PlanarCodeError(ValueError):
    """Raised on malformed planar_code input; carries the byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class PlanarGraph:
    """A simple graph embedded on the sphere, given as a rotation system."""

    rotation: Rotation

    def __post_init__(self):
        rot = tuple(tuple(int(w) for w in nbrs) for nbrs in self.rotation)
        object.__setattr__(self, "rotation", rot)
        n = len(rot)
        if n == 0:
            raise StructureError("graph has no vertices")
        for v, nbrs in enumerate(rot):
            if len(set(nbrs)) != len(nbrs):
                raise StructureError(f"vertex {v} has a repeated neighbour")
            for w in nbrs:
                if not 0 <= w < n:
                    raise StructureError(f"vertex {v} has out-of-range neighbour {w}")
                if w == v:
                    raise StructureError(f"loop at vertex {v}")
                if v not in rot[w]:
                    raise StructureError(f"edge {v}-{w} is not symmetric")

    @property
    def vertex_count(self) -> int:
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        return sum(len(r) for r in self.rotation) // 2

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def is_regular(self, k: int) -> bool:
        return all(len(r) == k for r in self.rotation)

    def edges(self) -> List[Tuple[int, int]]:
        return [(v, w) for v, nbrs in enumerate(self.rotation) for w in nbrs if v < w]

    def has_edge(self, u: int, w: int) -> bool:
        return w in self.rotation[u]

    @cached_property
    def _position(self) -> Tuple[Dict[int, int], ...]:
        return tuple({w: i for i, w in enumerate(nbrs)} for nbrs in self.rotation)

    def next_dart(self, u: int, w: int) -> Tuple[int, int]:
        """The dart following ``u -> w`` on its face."""
        nbrs = self.rotation[w]
        return w, nbrs[(self._position[w][u] + 1) % len(nbrs)]

    @cached_property
    def faces(self) -> Tuple[Face, ...]:
        return trace_faces(self).faces

    def to_json(self) -> dict:
        return {
            "vertices": self.vertex_count,
            "rotation": [[w + 1 for w in nbrs] for nbrs in self.rotation],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PlanarGraph":
        try:
            n = int(obj["vertices"])
            rot = obj["rotation"]
        except (KeyError, TypeError) as exc:
            raise StructureError(f"bad JSON graph object: {exc}") from None
        if len(rot) != n:
            raise StructureError(f"expected {n} rotation lists, got {len(rot)}")
        return cls(tuple(tuple(int(w) - 1 for w in nbrs) for nbrs in rot))

    @classmethod
    def from_adjacency(cls, rotation: Sequence[Sequence[int]]) -> "PlanarGraph":
        return cls(tuple(tuple(nbrs) for nbrs in rotation))


@dataclass(frozen=True)
class FaceStructure:
    faces: Tuple[Face, ...]
    face_vector: Dict[int, int]
    dart_face: Dict[Tuple[int, int], int] = field(repr=False)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @cached_property
    def dual(self) -> PlanarGraph:
        return _dual_from_faces(self)


def trace_faces(g: PlanarGraph) -> FaceStructure:
    """Trace the faces of ``g`` and verify the Euler relation V - E + F = 2."""
    seen: Dict[Tuple[int, int], int] = {}
    faces: List[Face] = []
    for v, nbrs in enumerate(g.rotation):
        for w in nbrs:
            if (v, w) in seen:
                continue
            idx = len(faces)
            cycle = []
            dart = (v, w)
            while dart not in seen:
                seen[dart] = idx
                cycle.append(dart[0])
                dart = g.next_dart(*dart)
            if dart != (v, w):
                raise StructureError(f"face tracing from dart {(v, w)} did not close")
            faces.append(tuple(cycle))
    euler = g.vertex_count - g.edge_count + len(faces)
    if euler != 2:
        raise StructureError(f"rotation system is not spherical (V - E + F = {euler})")
    counts = Counter(len(f) for f in faces)
    return FaceStructure(tuple(faces), dict(sorted(counts.items())), seen)


def face_vector(g: PlanarGraph) -> Dict[int, int]:
    """Map k -> number of k-gonal faces, for a 4-valent spherical graph."""
    if not g.is_regular(4):
        bad = next(v for v in range(g.vertex_count) if g.degree(v) != 4)
        raise ValueError(f"face_vector needs a 4-valent graph; vertex {bad} has degree {g.degree(bad)}")
    return trace_faces(g).face_vector


def _dual_from_faces(fs: FaceStructure) -> PlanarGraph:
    # Around face i, list the faces across each boundary dart in reverse
    # traversal order; this gives the dual the same orientation as the primal.
    rot = []
    for face in fs.faces:
        k = len(face)
        across = [fs.dart_face[(face[(j + 1) % k], face[j])] for j in range(k)]
        rot.append(tuple(reversed(across)))
    return PlanarGraph(tuple(rot))


def dual(g: PlanarGraph) -> PlanarGraph:
    return trace_faces(g).dual


def mirror(g: PlanarGraph) -> PlanarGraph:
    """The reflected embedding (every rotation reversed)."""
    return PlanarGraph(tuple(tuple(reversed(r)) for r in g.rotation))


def relabel(g: PlanarGraph, perm: Sequence[int]) -> PlanarGraph:
    """Rename vertex ``v`` to ``perm[v]``."""
    n = g.vertex_count
    rot: List[Tuple[int, ...]] = [()] * n
    for v, nbrs in enumerate(g.rotation):
        rot[perm[v]] = tuple(perm[w] for w in nbrs)
    return PlanarGraph(tuple(rot))


def random_presentation(g: PlanarGraph, rng: random.Random) -> PlanarGraph:
    """Random relabelling, random rotation starts and a random reflection."""
    perm = list(range(g.vertex_count))
    rng.shuffle(perm)
    h = relabel(g, perm)
    rot = []
    for nbrs in h.rotation:
        s = rng.randrange(len(nbrs))
        rot.append(nbrs[s:] + nbrs[:s])
    h = PlanarGraph(tuple(rot))
    return mirror(h) if rng.random() < 0.5 else h


# -- canonical form ----------------------------------------------------------


def _corner_sizes(g: PlanarGraph, fs: FaceStructure) -> List[List[int]]:
    # corner[v][i]: length of the face between rotation[v][i] and rotation[v][i+1]
    out = []
    for v, nbrs in enumerate(g.rotation):
        out.append([len(fs.faces[fs.dart_face[(u, v)]]) for u in nbrs])
    return out


def _bfs_code(g: PlanarGraph, start: int, first: int, reverse: bool) -> List[int]:
    rot = g.rotation
    pos = g._position
    number = {start: 1}
    order = [start]
    entry = {start: first}
    code: List[int] = []
    step = -1 if reverse else 1
    i = 0
    while i < len(order):
        v = order[i]
        nbrs = rot[v]
        d = len(nbrs)
        k = pos[v][entry[v]]
        for j in range(d):
            w = nbrs[(k + step * j) % d]
            num = number.get(w)
            if num is None:
                num = len(order) + 1
                number[w] = num
                order.append(w)
                entry[w] = v
            code.append(num)
        code.append(0)
        i += 1
    return code


def canonical_code(g: PlanarGraph) -> bytes:
    """Reflection-invariant canonical code of an embedded graph.

    The code is the lexicographically least breadth-first encoding over every
    starting dart and both orientations.  Starting darts are first filtered by
    the cyclic sequence of face lengths around the start vertex, which is an
    isomorphism invariant, so the minimum is the same for every presentation.
    """
    fs = trace_faces(g)
    corners = _corner_sizes(g, fs)
    best_inv = None
    candidates: List[Tuple[int, int, bool]] = []
    for v, nbrs in enumerate(g.rotation):
        cs = corners[v]
        d = len(nbrs)
        for k in range(d):
            fwd = (d,) + tuple(cs[(k + j) % d] for j in range(d))
            # reversed orientation: corner between nbrs[k-j] and nbrs[k-j-1]
            rev = (d,) + tuple(cs[(k - j - 1) % d] for j in range(d))
            for inv, reverse in ((fwd, False), (rev, True)):
                if best_inv is None or inv < best_inv:
                    best_inv = inv
                    candidates = [(v, nbrs[k], reverse)]
                elif inv == best_inv:
                    candidates.append((v, nbrs[k], reverse))
    best = min(_bfs_code(g, v, w, rev) for v, w, rev in candidates)
    n = g.vertex_count
    if n < 255:
        return bytes([n] + best)
    body = [n] + best
    return b"\xff" + b"".join(x.to_bytes(2, "big") for x in body)


def is_isomorphic(g: PlanarGraph, h: PlanarGraph) -> bool:
    return canonical_code(g) == canonical_code(h)


# -- planar_code I/O -----------------------------------------------------------


def encode_planar_code(g: PlanarGraph) -> bytes:
    n = g.vertex_count
    if n > 255:
        raise ValueError(f"planar_code supports at most 255 vertices, got {n}; use JSON")
    out = bytearray([n])
    for nbrs in g.rotation:
        out.extend(w + 1 for w in nbrs)
        out.append(0)
    return bytes(out)


def write_planar_code(graphs: Iterable[PlanarGraph], stream: BinaryIO, header: bool = True) -> int:
    """Write graphs in planar_code format; returns the number written."""
    if header:
        stream.write(PLANAR_CODE_HEADER)
    count = 0
    for g in graphs:
        stream.write(encode_planar_code(g))
        count += 1
    return count


def iter_planar_code(stream: BinaryIO, *, skip_invalid: bool = False) -> Iterator[PlanarGraph]:
    """Decode graphs one record at a time.

    With ``skip_invalid`` a record that frames correctly but is not a simple
    symmetric rotation system is yielded as its PlanarCodeError instead of
    raising, so callers can report it and carry on.  Framing errors always raise.
    """
    data = stream.read()
    h = len(PLANAR_CODE_HEADER)
    if data[:h] != PLANAR_CODE_HEADER:
        raise PlanarCodeError("missing >>planar_code<< header", 0)
    pos = h
    while pos < len(data):
        start = pos
        n = data[pos]
        if n == 0:
            raise PlanarCodeError("zero vertex count", pos)
        pos += 1
        rot = []
        for v in range(n):
            nbrs = []
            while True:
                if pos >= len(data):
                    raise PlanarCodeError(f"truncated record (vertex {v + 1} of {n})", pos)
                b = data[pos]
                pos += 1
                if b == 0:
                    break
                if b > n:
                    raise PlanarCodeError(f"neighbour {b} out of range for n={n}", pos - 1)
                nbrs.append(b - 1)
            rot.append(tuple(nbrs))
        try:
            g = PlanarGraph(tuple(rot))
        except StructureError as exc:
            err = PlanarCodeError(f"invalid rotation system: {exc}", start)
            if not skip_invalid:
                raise err from None
            yield err
            continue
        yield g


def read_planar_code(stream: BinaryIO) -> List[PlanarGraph]:
    return list(iter_planar_code(stream))


def planar_code_bytes(graphs: Iterable[PlanarGraph]) -> bytes:
    buf = io.BytesIO()
    write_planar_code(graphs, buf)
    return buf.getvalue()


# -- JSON lines I/O ------------------------------------------------------------


def write_json_graphs(graphs: Iterable[PlanarGraph], stream: TextIO) -> int:
    count = 0
    for g in graphs:
        stream.write(json.dumps(g.to_json(), separators=(",", ":")) + "\n")
        count += 1
    return count


def read_json_graphs(stream: TextIO) -> List[PlanarGraph]:
    """Read either JSON lines or a single JSON array of graph objects."""
    text = stream.read()
    stripped = text.lstrip()
    if not stripped:
        return []
    if stripped.startswith("["):
        return [PlanarGraph.from_json(o) for o in json.loads(stripped)]
    return [PlanarGraph.from_json(json.loads(line)) for line in text.splitlines() if line.strip()]


def read_graphs(data: bytes) -> List[PlanarGraph]:
    """Read a graph stream, sniffing planar_code vs JSON."""
    if data.startswith(PLANAR_CODE_HEADER):
        return read_planar_code(io.BytesIO(data))
    return read_json_graphs(io.StringIO(data.decode("utf-8")))


def cube() -> PlanarGraph:
    """The cube graph (3-valent); handy as a non-4-valent fixture."""
    # bottom square 0-3, top square 4-7, vertex i+4 above vertex i
    return PlanarGraph.from_adjacency([
        (1, 4, 3), (2, 5, 0), (3, 6, 1), (0, 7, 2),
        (0, 5, 7), (6, 4, 1), (7, 5, 2), (4, 6, 3),
    ])

