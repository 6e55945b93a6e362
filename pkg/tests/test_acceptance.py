"""Acceptance checks, one per criterion.

Each check prints a single ``criterion N: PASS|FAIL ...`` line.  Under pytest
the lines are repeated in an "acceptance criteria" summary section; the file
also runs directly as a script.
"""

import io
import math
import random
import subprocess
import sys
import time
from functools import lru_cache

import numpy as np
import pytest

from irpoly.analysis import (
    atkinson_bounds,
    bounds_report,
    distinct_volumes,
    is_itr,
    itr_double,
    itr_face_bound,
)
from irpoly.census import build_census
from irpoly.enumeration import antiprism, check_validity, twisted_antiprism
from irpoly.fixtures import pseudo_rhombicuboctahedron, rhombicuboctahedron
from irpoly.lobachevsky import V8, lobachevsky, lobachevsky_derivative
from irpoly.planar import (
    canonical_code,
    face_vector,
    planar_code_bytes,
    random_presentation,
    read_planar_code,
    trace_faces,
)
from irpoly.volume import antiprism_volume, ideal_volume, twisted_antiprism_volume
from reference_data import (
    CENSUS_TABLE,
    PSEUDO_RHOMBICUBOCTAHEDRON_VOLUME,
    RHOMBICUBOCTAHEDRON_VOLUME,
    SPECTRUM_248,
)

TOL_TABLE = 1e-5


@lru_cache(maxsize=None)
def census16():
    return build_census(16)


# filled as checks run; conftest prints these in the terminal summary
RESULTS = {}


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    RESULTS[n] = line
    print(line)
    return ok


# -- checks ------------------------------------------------------------------------


def check_1():
    t0 = time.perf_counter()
    p = subprocess.run([sys.executable, "-m", "irpoly", "enumerate", "--max-faces", "16"],
                       capture_output=True, check=False)
    elapsed = time.perf_counter() - t0
    counts = {}
    for line in p.stderr.decode().splitlines():
        if line.startswith("faces="):
            f, c = (int(part.split("=")[1]) for part in line.split())
            counts[f] = c
    want = {f: CENSUS_TABLE[f][0] for f in range(8, 17)}
    n_graphs = len(read_planar_code(io.BytesIO(p.stdout)))
    ok = p.returncode == 0 and counts == want and n_graphs == sum(want.values()) and elapsed < 60
    # stretch goal, not gating
    t1 = time.perf_counter()
    p18 = subprocess.run([sys.executable, "-m", "irpoly", "enumerate", "--max-faces", "18"],
                         capture_output=True, check=False)
    t18 = time.perf_counter() - t1
    c18 = [line for line in p18.stderr.decode().splitlines() if line.startswith("faces=18 ")]
    stretch = f"stretch: {c18[0] if c18 else 'faces=18 missing'} in {t18:.1f}s"
    return ok, f"counts={counts} runtime={elapsed:.1f}s; {stretch}"


def check_2():
    worst = 0.0
    for n in range(3, 11):
        worst = max(worst, abs(antiprism_volume(n) - CENSUS_TABLE[2 * n + 2][2]))
    for n in range(4, 11):
        worst = max(worst, abs(twisted_antiprism_volume(n) - CENSUS_TABLE[2 * n + 3][2]))
    ident = max(abs(twisted_antiprism_volume(n) - antiprism_volume(n - 1) - V8) for n in range(4, 21))
    ok = worst < TOL_TABLE and ident < 1e-10
    return ok, f"max table error {worst:.2e}; twist identity error {ident:.2e}"


def check_3():
    solver = max(abs(ideal_volume(antiprism(n)) - antiprism_volume(n)) for n in range(3, 9))
    by_f = census16().by_faces()
    errs = {}
    for f, want in ((12, 8.612415), (13, 10.149416), (14, 12.046092)):
        graphs = [g for g, r in zip(census16().graphs, census16().records) if r.faces == f]
        assert len(graphs) == len(by_f[f])
        best = max(ideal_volume(g) for g in graphs)
        errs[f] = abs(best - want)
    ok = solver < 1e-6 and all(e < TOL_TABLE for e in errs.values())
    return ok, f"antiprism solver error {solver:.2e}; max-volume errors {{{', '.join(f'{k}: {v:.1e}' for k, v in errs.items())}}}"


def check_4():
    got = {f: len(distinct_volumes([r.volume for r in rs])) for f, rs in census16().by_faces().items()}
    want = {f: CENSUS_TABLE[f][1] for f in range(8, 17)}
    return got == want, f"distinct={got}"


def check_5():
    values = distinct_volumes([r.volume for r in census16().records])
    realized = np.array(values)
    rows, excluded = [], []
    for i, ref in enumerate(SPECTRUM_248[:13], 1):
        if np.min(np.abs(realized - ref)) < TOL_TABLE:
            rows.append((i, ref))
        else:
            excluded.append(i)
    mismatches = [(i, ref, values[i - 1]) for i, ref in rows if abs(values[i - 1] - ref) >= TOL_TABLE]
    detail = f"excluded rows {excluded or 'none'}"
    if mismatches:
        i, ref, got = mismatches[0]
        detail += (f"; {len(mismatches)} row(s) differ, first at row {i}: reference {ref:.6f}, "
                   f"computed {got:.6f}")
    else:
        detail += "; first 13 entries agree"
    return not mismatches, detail


def check_6():
    bad = []
    for r, g in zip(census16().records, census16().graphs):
        v = ideal_volume(g)
        violations = bounds_report(g).violations(v, eps=1e-9)
        if violations:
            bad.append((r.code, violations))
    lo, hi = atkinson_bounds(6)
    octa = ideal_volume(antiprism(3))
    eq = max(abs(octa - lo), abs(octa - hi))
    return not bad and eq < 1e-9, f"violations={len(bad)} over {len(census16().records)} records; octahedron equality error {eq:.1e}"


def check_7():
    graphs = census16().graphs
    any_itr = any(is_itr(g) for g in graphs)
    analytic = all(face_vector(g)[3] >= 8 for g in graphs) and itr_face_bound(8) == 26
    rho, pseudo = rhombicuboctahedron(), pseudo_rhombicuboctahedron()
    fixtures_ok = all(is_itr(g) and check_validity(g) and len(g.faces) == 26 for g in (rho, pseudo))
    tri = next(f for f in rho.faces if len(f) == 3)
    d = itr_double(rho, tri)
    double_ok = is_itr(d) and bool(check_validity(d)) and face_vector(d)[3] == 14 and len(d.faces) == 47
    v1, v2 = ideal_volume(rho), ideal_volume(pseudo)
    vol_ok = abs(v1 - RHOMBICUBOCTAHEDRON_VOLUME) < 1e-4 and abs(v2 - PSEUDO_RHOMBICUBOCTAHEDRON_VOLUME) < 1e-4
    ok = not any_itr and analytic and fixtures_ok and double_ok and vol_ok
    return ok, (f"census ITR={any_itr}; no ITR below {itr_face_bound(8)} faces; doubled F={len(d.faces)} "
                f"p3={face_vector(d)[3]}; volumes {v1:.7f}, {v2:.7f}")


def check_8():
    rng = random.Random(8)
    failures = []
    xs = np.array([rng.uniform(-20, 20) for _ in range(2000)])
    if np.max(np.abs(lobachevsky(-xs) + lobachevsky(xs))) > 1e-13:
        failures.append("odd")
    if np.max(np.abs(lobachevsky(xs + math.pi) - lobachevsky(xs))) > 1e-12:
        failures.append("periodic")
    ys = np.array([rng.uniform(0.1, math.pi - 0.1) for _ in range(500)])
    h = 1e-5
    fd = (lobachevsky(ys + h) - lobachevsky(ys - h)) / (2 * h)
    if np.max(np.abs(fd - lobachevsky_derivative(ys))) > 1e-7:
        failures.append("derivative")
    for g in census16().graphs:
        fs = trace_faces(g)
        if g.vertex_count - g.edge_count + fs.face_count != 2 or g.edge_count != 2 * g.vertex_count:
            failures.append("euler")
            break
    fixtures = [antiprism(3), antiprism(6), twisted_antiprism(5), rhombicuboctahedron()] + census16().graphs[-5:]
    for g in fixtures:
        code = canonical_code(g)
        if any(canonical_code(random_presentation(g, rng)) != code for _ in range(100)):
            failures.append("canonical")
            break
    data = planar_code_bytes(census16().graphs)
    if planar_code_bytes(read_planar_code(io.BytesIO(data))) != data:
        failures.append("planar_code")
    return not failures, f"failures={failures or 'none'}"


CHECKS = {1: check_1, 2: check_2, 3: check_3, 4: check_4, 5: check_5, 6: check_6, 7: check_7, 8: check_8}

LITERAL_SPECTRUM_NOTE = (
    "the published spectrum omits 12.046092 (the 14-face maximum, also checked by criterion 3) "
    "at row 13 and prints it as 12.46092 further down; the literal prefix comparison cannot pass"
)


def _run(n):
    ok, detail = CHECKS[n]()
    report(n, ok, detail)
    return ok


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 7, 8])
def test_criterion(n):
    assert _run(n)


@pytest.mark.xfail(strict=True, reason=LITERAL_SPECTRUM_NOTE)
def test_criterion_5():
    assert _run(5)


def test_spectrum_prefix_with_corrected_row():
    # informative companion to criterion 5: read printed row 16 as 12.046092
    values = distinct_volumes([r.volume for r in census16().records])
    corrected = sorted(SPECTRUM_248[:12] + SPECTRUM_248[12:15] + [12.046092])
    assert all(abs(a - b) < TOL_TABLE for a, b in zip(values[:16], corrected))


if __name__ == "__main__":
    results = [_run(n) for n in CHECKS]
    sys.exit(0 if all(results) else 1)
