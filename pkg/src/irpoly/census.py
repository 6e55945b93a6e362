"""Census assembly and persistence (JSON lines plus a planar_code sidecar)."""

from __future__ import annotations

import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from .analysis import bounds_report, classify
from .enumeration import enumerate_polyhedra
from .planar import PlanarGraph, canonical_code, face_vector, read_planar_code, write_planar_code
from .volume import format_volume, ideal_volume


@dataclass(frozen=True)
class CensusRecord:
    code: str
    faces: int
    vertices: int
    face_vector: Dict[int, int]
    volume: float
    is_antiprism: bool = False
    is_twisted_antiprism: bool = False
    is_itr: bool = False

    @property
    def label(self) -> str:
        if self.is_antiprism:
            return "antiprism"
        if self.is_twisted_antiprism:
            return "twisted"
        return "other"

    def to_json(self) -> dict:
        return {
            "code": self.code,
            "faces": self.faces,
            "vertices": self.vertices,
            "face_vector": {str(k): v for k, v in sorted(self.face_vector.items())},
            "volume": format_volume(self.volume),
            "is_antiprism": self.is_antiprism,
            "is_twisted_antiprism": self.is_twisted_antiprism,
            "is_itr": self.is_itr,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CensusRecord":
        return cls(
            code=obj["code"],
            faces=int(obj["faces"]),
            vertices=int(obj["vertices"]),
            face_vector={int(k): int(v) for k, v in obj["face_vector"].items()},
            volume=float(obj["volume"]),
            is_antiprism=bool(obj["is_antiprism"]),
            is_twisted_antiprism=bool(obj["is_twisted_antiprism"]),
            is_itr=bool(obj["is_itr"]),
        )


@dataclass
class Census:
    """Records for every polyhedron with at most ``max_faces`` faces."""

    max_faces: int
    records: List[CensusRecord] = field(default_factory=list)
    graphs: List[PlanarGraph] = field(default_factory=list)

    def by_faces(self) -> Dict[int, List[CensusRecord]]:
        out: Dict[int, List[CensusRecord]] = {f: [] for f in range(8, self.max_faces + 1)}
        for r in self.records:
            out.setdefault(r.faces, []).append(r)
        return out


def make_record(g: PlanarGraph, volume: Optional[float] = None, seed: int = 0) -> CensusRecord:
    code = canonical_code(g)
    flags = classify(g, code)
    if volume is None:
        volume = ideal_volume(g, seed=seed)
    return CensusRecord(
        code=code.hex(),
        faces=g.vertex_count + 2,
        vertices=g.vertex_count,
        face_vector=face_vector(g),
        volume=volume,
        is_antiprism=flags.is_antiprism,
        is_twisted_antiprism=flags.is_twisted_antiprism,
        is_itr=flags.is_itr,
    )


def _record_task(args: Tuple[Tuple[Tuple[int, ...], ...], int]) -> CensusRecord:
    rotation, seed = args
    return make_record(PlanarGraph(rotation), seed=seed)


def records_for(graphs: Sequence[PlanarGraph], jobs: int = 1, seed: int = 0,
                progress: bool = False) -> List[CensusRecord]:
    """Volume + flags per graph; parallel over graphs, order preserved."""
    if jobs <= 1 or len(graphs) < 2:
        it = (make_record(g, seed=seed) for g in graphs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=jobs)
        it = pool.map(_record_task, [(g.rotation, seed) for g in graphs], chunksize=16)
    out: List[CensusRecord] = []
    try:
        for r in it:
            out.append(r)
            if progress and len(out) % 5000 == 0:
                print(f"volumes={len(out)}/{len(graphs)}", file=sys.stderr, flush=True)
    finally:
        if pool is not None:
            pool.shutdown()
    return out


def build_census(max_faces: int, jobs: int = 1, seed: int = 0, progress: bool = False) -> Census:
    graphs: List[PlanarGraph] = []
    enumerate_polyhedra(max_faces, graphs.append, progress=progress)
    records = records_for(graphs, jobs=jobs, seed=seed, progress=progress)
    order = sorted(range(len(graphs)), key=lambda i: (records[i].faces, records[i].code))
    return Census(max_faces, [records[i] for i in order], [graphs[i] for i in order])


def bound_violations(census: Census) -> List[Tuple[CensusRecord, List[str]]]:
    out = []
    for r, g in zip(census.records, census.graphs):
        bad = bounds_report(g).violations(r.volume)
        if bad:
            out.append((r, bad))
    return out


# -- persistence ---------------------------------------------------------------------


def write_records(records: Iterable[CensusRecord], stream: TextIO) -> None:
    for r in records:
        stream.write(json.dumps(r.to_json(), separators=(",", ":")) + "\n")


def read_records(stream: TextIO) -> List[CensusRecord]:
    return [CensusRecord.from_json(json.loads(line)) for line in stream if line.strip()]


def save_census(census: Census, path: Path) -> Path:
    """Write ``path`` (JSON lines, with a header line) and ``path.pc`` (planar_code)."""
    path = Path(path)
    with path.open("w") as fh:
        fh.write(json.dumps({"census": {"max_faces": census.max_faces, "count": len(census.records)}}) + "\n")
        write_records(census.records, fh)
    sidecar = path.with_suffix(path.suffix + ".pc")
    with sidecar.open("wb") as fh:
        write_planar_code(census.graphs, fh)
    return sidecar


def load_census(path: Path) -> Census:
    path = Path(path)
    with path.open() as fh:
        header = json.loads(fh.readline())["census"]
        records = read_records(fh)
    sidecar = path.with_suffix(path.suffix + ".pc")
    graphs: List[PlanarGraph] = []
    if sidecar.exists():
        with sidecar.open("rb") as fh:
            graphs = read_planar_code(fh)
    return Census(int(header["max_faces"]), records, graphs)
