"""Command-line front end: ``irpoly <subcommand> [options]``.

Data goes to standard output (or ``--out``); progress and diagnostics go to
standard error.  Exit status is 0 when every record was processed cleanly,
1 when some record failed, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

from . import analysis
from .analysis import (
    IncompleteCensusError,
    atkinson_bounds,
    bounds_report,
    certified_cutoff,
    distinct_volumes,
    is_itr,
    itr_face_bound,
)
from .census import Census, build_census, load_census, make_record, save_census, write_records
from .enumeration import check_validity, enumerate_polyhedra
from .planar import (
    PLANAR_CODE_HEADER,
    PlanarCodeError,
    PlanarGraph,
    StructureError,
    iter_planar_code,
    read_graphs,
    write_json_graphs,
    write_planar_code,
)
from .volume import TriangulationError, format_volume


FORMATS = ("planar_code", "json", "csv")


class ConfigError(ValueError):
    pass


@dataclass
class CommandConfig:
    subcommand: str
    max_faces: Optional[int] = None
    input: Optional[Path] = None
    output: Optional[Path] = None
    format: str = "planar_code"
    jobs: int = 1
    seed: int = 0
    cutoff: Optional[float] = None
    resolution: float = analysis.VOLUME_RESOLUTION
    progress: bool = False

    def validate(self) -> "CommandConfig":
        if self.max_faces is not None and self.max_faces < 8:
            raise ConfigError(f"--max-faces must be at least 8 (got {self.max_faces})")
        if self.jobs < 1:
            raise ConfigError(f"--jobs must be at least 1 (got {self.jobs})")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown --format {self.format!r}")
        if self.resolution <= 0:
            raise ConfigError("--resolution must be positive")
        return self


@contextmanager
def _text_out(cfg: CommandConfig):
    if cfg.output is None:
        yield sys.stdout
    else:
        with open(cfg.output, "w", newline="") as fh:
            yield fh


@contextmanager
def _binary_out(cfg: CommandConfig):
    if cfg.output is None:
        yield sys.stdout.buffer
        sys.stdout.buffer.flush()
    else:
        with open(cfg.output, "wb") as fh:
            yield fh


def _read_input_bytes(cfg: CommandConfig) -> bytes:
    if cfg.input is None or str(cfg.input) == "-":
        return sys.stdin.buffer.read()
    return Path(cfg.input).read_bytes()


def _census(cfg: CommandConfig) -> Census:
    if cfg.input is not None:
        return load_census(cfg.input)
    if cfg.max_faces is None:
        raise ConfigError("either --max-faces or --in <census file> is required")
    return build_census(cfg.max_faces, jobs=cfg.jobs, seed=cfg.seed, progress=cfg.progress)


# -- subcommands ---------------------------------------------------------------------


def cmd_enumerate(cfg: CommandConfig) -> int:
    if cfg.max_faces is None:
        raise ConfigError("enumerate needs --max-faces")
    graphs: List[PlanarGraph] = []
    counts = enumerate_polyhedra(cfg.max_faces, graphs.append, progress=cfg.progress)
    if cfg.format == "json":
        with _text_out(cfg) as fh:
            write_json_graphs(graphs, fh)
    elif cfg.format == "planar_code":
        with _binary_out(cfg) as fh:
            write_planar_code(graphs, fh)
    else:
        raise ConfigError("enumerate writes planar_code or json")
    for f, c in counts.items():
        print(f"faces={f} polyhedra={c}", file=sys.stderr)
    return 0


def cmd_volume(cfg: CommandConfig) -> int:
    data = _read_input_bytes(cfg)
    rows = []
    failures = 0
    try:
        if data.startswith(PLANAR_CODE_HEADER):
            graphs = list(iter_planar_code(io.BytesIO(data), skip_invalid=True))
        else:
            graphs = read_graphs(data)
    except (PlanarCodeError, StructureError, ValueError, KeyError) as exc:
        print(f"error: unreadable graph stream: {exc}", file=sys.stderr)
        return 1
    for i, g in enumerate(graphs):
        if isinstance(g, PlanarCodeError):
            failures += 1
            print(f"record {i}: error: {g}", file=sys.stderr)
            continue
        report = check_validity(g)
        if not report:
            failures += 1
            print(f"record {i}: error: {report.describe()}", file=sys.stderr)
            continue
        try:
            rec = make_record(g, seed=cfg.seed)
        except TriangulationError as exc:
            failures += 1
            print(f"record {i}: error: {exc}", file=sys.stderr)
            continue
        rows.append(rec)
    rows.sort(key=lambda r: (r.faces, r.code))
    with _text_out(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["code", "faces", "volume"])
        for r in rows:
            w.writerow([r.code, r.faces, format_volume(r.volume)])
    return 1 if failures else 0


def cmd_census(cfg: CommandConfig) -> int:
    census = _census(cfg)
    if cfg.output is None:
        write_records(census.records, sys.stdout)
    else:
        sidecar = save_census(census, cfg.output)
        print(f"wrote {len(census.records)} records to {cfg.output} and {sidecar}", file=sys.stderr)
    for f, rs in census.by_faces().items():
        vols = distinct_volumes([r.volume for r in rs], cfg.resolution)
        lo = format_volume(min(r.volume for r in rs)) if rs else "-"
        hi = format_volume(max(r.volume for r in rs)) if rs else "-"
        print(f"faces={f} polyhedra={len(rs)} volumes={len(vols)} min={lo} max={hi}", file=sys.stderr)
    return 0


def cmd_spectrum(cfg: CommandConfig) -> int:
    census = _census(cfg)
    if cfg.cutoff is not None:
        try:
            values = analysis.volume_spectrum(census, cfg.cutoff)
        except IncompleteCensusError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    else:
        values = distinct_volumes([r.volume for r in census.records], cfg.resolution)
        safe = certified_cutoff(census.max_faces)
        n_safe = sum(1 for v in values if v <= safe)
        print(
            f"note: values up to {safe:.6f} ({n_safe} of {len(values)}) are complete for "
            f"faces <= {census.max_faces}; larger values may have gaps",
            file=sys.stderr,
        )
    with _text_out(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["index", "volume"])
        for i, v in enumerate(values, 1):
            w.writerow([i, format_volume(v)])
    return 0


def _opt(x: Optional[float]) -> str:
    return "" if x is None else format_volume(x)


def cmd_bounds(cfg: CommandConfig) -> int:
    census = _census(cfg)
    if len(census.graphs) != len(census.records):
        raise ConfigError("bounds needs graphs (planar_code sidecar missing)")
    violations = 0
    with _text_out(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["code", "faces", "vertices", "volume", "atkinson_lower", "atkinson_upper",
                    "improved_upper", "quad_upper", "violations"])
        for r, g in zip(census.records, census.graphs):
            rep = bounds_report(g)
            bad = rep.violations(r.volume)
            violations += bool(bad)
            w.writerow([r.code, r.faces, r.vertices, format_volume(r.volume),
                        format_volume(rep.atkinson_lower), format_volume(rep.atkinson_upper),
                        _opt(rep.improved_upper), _opt(rep.quad_upper), ";".join(bad)])
    print(f"records={len(census.records)} violations={violations}", file=sys.stderr)
    return 1 if violations else 0


def cmd_itr(cfg: CommandConfig) -> int:
    found: List[PlanarGraph] = []
    if cfg.input is not None:
        graphs = read_graphs(_read_input_bytes(cfg))
        found = [g for g in graphs if check_validity(g) and is_itr(g)]
        scanned = f"{len(graphs)} input graphs"
    else:
        if cfg.max_faces is None:
            raise ConfigError("itr needs --max-faces or --in")
        smallest = itr_face_bound(8)
        if cfg.max_faces < smallest:
            print(f"no ITR-polyhedra found: every polyhedron has p3 >= 8 triangles, so an ITR-polyhedron "
                  f"needs at least {smallest} faces (> {cfg.max_faces})")
            return 0
        print(f"warning: exhaustive search to {cfg.max_faces} faces is a long run", file=sys.stderr)

        def keep(g: PlanarGraph) -> None:
            p3 = sum(1 for f in g.faces if len(f) == 3)
            if g.vertex_count + 2 >= itr_face_bound(p3) and is_itr(g):
                found.append(g)

        enumerate_polyhedra(cfg.max_faces, keep, progress=cfg.progress, min_faces=smallest)
        scanned = f"all polyhedra with at most {cfg.max_faces} faces"
    if not found:
        print(f"no ITR-polyhedra found among {scanned}")
        return 0
    records = [make_record(g, seed=cfg.seed) for g in found]
    print(f"found {len(records)} ITR-polyhedra among {scanned}")
    with _text_out(cfg) as fh:
        write_records(sorted(records, key=lambda r: (r.faces, r.code)), fh)
    return 0


def cmd_plot_data(cfg: CommandConfig) -> int:
    census = _census(cfg)
    by_v = {}
    for r in census.records:
        by_v.setdefault(r.vertices, []).append(r)
    with _text_out(cfg) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["vertices", "volume", "class"])
        for n in sorted(by_v):
            for r in sorted(by_v[n], key=lambda r: (r.volume, r.code)):
                w.writerow([n, format_volume(r.volume), r.label])
            lo, hi = atkinson_bounds(n)
            w.writerow([n, format_volume(lo), "curve_lower"])
            w.writerow([n, format_volume(hi), "curve_upper"])
    return 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "volume": cmd_volume,
    "census": cmd_census,
    "spectrum": cmd_spectrum,
    "bounds": cmd_bounds,
    "itr": cmd_itr,
    "plot-data": cmd_plot_data,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="irpoly", description="Ideal right-angled hyperbolic polyhedra.")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--max-faces", type=int)
        p.add_argument("--in", dest="input", type=Path)
        p.add_argument("--out", dest="output", type=Path)
        p.add_argument("--format", default="planar_code", choices=FORMATS)
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cutoff", type=float)
        p.add_argument("--resolution", type=float, default=analysis.VOLUME_RESOLUTION,
                       help="volumes closer than this count as equal")
        p.add_argument("--progress", action="store_true", help="print level=<faces> found=<n> lines")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    cfg = CommandConfig(**vars(args))
    try:
        cfg.validate()
        return COMMANDS[cfg.subcommand](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
