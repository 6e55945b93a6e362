"""Volumes of ideal right-angled polyhedra.

Closed forms cover antiprisms and twisted antiprisms.  For a general
polyhedron we put one vertex (the apex) at infinity and cone the remaining
faces to it.  Each tetrahedron (apex, p, q, r) has its dihedral angle at the
edge apex-p equal to the angle at p of the Euclidean triangle pqr, and the
same angle sits at the opposite edge qr.  The volume is the maximum of the
sum of Lobachevsky functions over all angle assignments satisfying

* the three angles of each tetrahedron sum to pi;
* around a cone edge apex-p they sum to pi/2 (p adjacent to the apex),
  pi (p on a face through the apex) or 2*pi (otherwise);
* around a polyhedron edge qr they sum to pi/2, around a fan diagonal to pi.

The objective is strictly concave on this affine slice, so the maximum is
found by Newton's method in null-space coordinates.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import linprog

from .enumeration import check_validity
from .lobachevsky import V8, lobachevsky, lobachevsky_derivative
from .planar import PlanarGraph, trace_faces

log = logging.getLogger(__name__)

PI = math.pi


class TriangulationError(RuntimeError):
    """No interior angle structure was found for the given apex."""

    def __init__(self, message: str, apex: Optional[int] = None):
        super().__init__(message if apex is None else f"{message} (apex {apex})")
        self.apex = apex


class InvalidPolyhedronError(ValueError):
    pass


def antiprism_volume(n: int) -> float:
    if n < 3:
        raise ValueError(f"antiprism_volume needs n >= 3, got {n}")
    return 2 * n * (lobachevsky(PI / 4 + PI / (2 * n)) + lobachevsky(PI / 4 - PI / (2 * n)))


def twisted_antiprism_volume(n: int) -> float:
    if n < 4:
        raise ValueError(f"twisted_antiprism_volume needs n >= 4, got {n}")
    m = n - 1
    return 2 * m * (lobachevsky(PI / 4 + PI / (2 * m)) + lobachevsky(PI / 4 - PI / (2 * m))) + 8 * lobachevsky(PI / 4)


@dataclass
class IdealTriangulation:
    """Cone decomposition from an apex vertex.

    ``tetrahedra[t] = (p, q, r)`` is the cone over triangle pqr; angle index
    ``3*t + i`` is the dihedral angle at the edge apex-``tetrahedra[t][i]``
    (and at the opposite edge).  ``classes`` maps an edge-class key to its
    target sum and the angle indices it contains.
    """

    apex: int
    tetrahedra: List[Tuple[int, int, int]]
    classes: Dict[tuple, Tuple[float, List[int]]] = field(default_factory=dict)

    @property
    def n_angles(self) -> int:
        return 3 * len(self.tetrahedra)

    def constraints(self) -> Tuple[np.ndarray, np.ndarray]:
        rows, rhs = [], []
        m = self.n_angles
        for t in range(len(self.tetrahedra)):
            row = np.zeros(m)
            row[3 * t: 3 * t + 3] = 1.0
            rows.append(row)
            rhs.append(PI)
        for target, members in self.classes.values():
            row = np.zeros(m)
            row[members] = 1.0
            rows.append(row)
            rhs.append(target)
        return np.array(rows), np.array(rhs)


def default_apex(g: PlanarGraph) -> int:
    """Vertex with the largest total length of incident faces (lowest index on ties)."""
    score = [0] * g.vertex_count
    for face in g.faces:
        for v in face:
            score[v] += len(face)
    best = max(score)
    return score.index(best)


def triangulate(g: PlanarGraph, apex: Optional[int] = None, *, check: bool = True) -> IdealTriangulation:
    if check:
        report = check_validity(g)
        if not report:
            raise InvalidPolyhedronError(f"graph is not ideal right-angled: {report.describe()}")
    if apex is None:
        apex = default_apex(g)
    faces = trace_faces(g).faces
    apex_nbrs = set(g.rotation[apex])
    on_apex_face = {v for f in faces if apex in f for v in f}
    edges = {frozenset(e) for e in g.edges()}

    tets: List[Tuple[int, int, int]] = []
    for face in faces:
        if apex in face:
            continue
        s = face.index(min(face))
        f = face[s:] + face[:s]
        for i in range(1, len(f) - 1):
            tets.append((f[0], f[i], f[i + 1]))

    classes: Dict[tuple, Tuple[float, List[int]]] = {}
    for t, tri in enumerate(tets):
        for i in range(3):
            p = tri[i]
            q, r = tri[(i + 1) % 3], tri[(i + 2) % 3]
            if p in apex_nbrs:
                cone_target = PI / 2
            elif p in on_apex_face:
                cone_target = PI
            else:
                cone_target = 2 * PI
            key = ("cone", p)
            classes.setdefault(key, (cone_target, []))[1].append(3 * t + i)
            e = frozenset((q, r))
            key = ("edge", min(q, r), max(q, r))
            classes.setdefault(key, (PI / 2 if e in edges else PI, []))[1].append(3 * t + i)
    return IdealTriangulation(apex, tets, classes)


def _objective(theta: np.ndarray) -> float:
    return float(np.sum(lobachevsky(theta)))


@dataclass
class SolveResult:
    volume: float
    angles: np.ndarray
    apex: int
    iterations: int
    history: List[float]
    gradient_norm: float


def _feasible_start(A: np.ndarray, b: np.ndarray, Z: np.ndarray, rng: random.Random, apex: int) -> np.ndarray:
    m = A.shape[1]
    center = np.full(m, PI / 3)
    x0 = center + np.linalg.lstsq(A, b - A @ center, rcond=None)[0]
    if x0.min() > 1e-6:
        return x0
    # nudge along the null space a few times before falling back to an LP
    if Z.shape[1]:
        for _ in range(20):
            y = np.array([rng.gauss(0.0, 1.0) for _ in range(Z.shape[1])])
            cand = x0 + 0.1 * (Z @ y)
            if cand.min() > 1e-6:
                return cand
    # maximize the smallest angle: variables (theta, s), max s
    c = np.zeros(m + 1)
    c[-1] = -1.0
    A_eq = np.hstack([A, np.zeros((A.shape[0], 1))])
    A_ub = np.hstack([-np.eye(m), np.ones((m, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(m), A_eq=A_eq, b_eq=b,
                  bounds=[(0, PI)] * m + [(None, 1.0)], method="highs")
    if res.status != 0 or res.x[-1] <= 1e-9:
        raise TriangulationError("no strictly positive angle structure", apex)
    return res.x[:m]


def maximize_volume(tri: IdealTriangulation, *, tol: float = 1e-10, max_iter: int = 200,
                    seed: int = 0) -> SolveResult:
    """Damped Newton ascent of the volume functional over angle structures."""
    A, b = tri.constraints()
    Z = null_space(A)
    rng = random.Random(seed)
    theta = _feasible_start(A, b, Z, rng, tri.apex)
    # keep exact feasibility: re-project onto the affine space once
    theta = theta + np.linalg.lstsq(A, b - A @ theta, rcond=None)[0]
    f = _objective(theta)
    history = [f]
    gnorm = math.inf
    it = 0
    if Z.shape[1] == 0:
        return SolveResult(f, theta, tri.apex, 0, history, 0.0)
    for it in range(1, max_iter + 1):
        grad = Z.T @ lobachevsky_derivative(theta)
        gnorm = float(np.linalg.norm(grad))
        if gnorm < tol:
            break
        h = -1.0 / np.tan(theta)
        H = Z.T @ (h[:, None] * Z)
        try:
            step = -np.linalg.solve(H, grad)
        except np.linalg.LinAlgError:
            step = grad
        direction = Z @ step
        if float(grad @ step) <= 0:
            # Hessian lost definiteness numerically; fall back to gradient ascent
            step, direction = grad, Z @ grad
        t = 1.0
        neg = direction < 0
        if np.any(neg):
            t = min(1.0, 0.99 * float(np.min(-theta[neg] / direction[neg])))
        slope = float(grad @ step)
        fc = -math.inf
        while True:
            cand = theta + t * direction
            if cand.min() > 0 and cand.max() < PI:
                fc = _objective(cand)
                if fc >= f + 1e-4 * t * slope or t < 1e-12:
                    break
            t *= 0.5
            if t < 1e-14:
                break
        if fc < f:
            # no ascent possible at machine precision
            break
        theta, f = cand, fc
        history.append(f)
    if theta.min() < 1e-7:
        raise TriangulationError(f"angle structure degenerates (min angle {theta.min():.3g})", tri.apex)
    if gnorm > 1e-6:
        raise TriangulationError(f"Newton iteration did not converge (|grad| = {gnorm:.3g})", tri.apex)
    return SolveResult(f, theta, tri.apex, it, history, gnorm)


def solve(g: PlanarGraph, *, apex: Optional[int] = None, seed: int = 0, tol: float = 1e-10) -> SolveResult:
    """Maximize the volume functional, retrying other apexes if one fails."""
    report = check_validity(g)
    if not report:
        raise InvalidPolyhedronError(f"graph is not ideal right-angled: {report.describe()}")
    first = default_apex(g) if apex is None else apex
    order = [first] + [v for v in range(g.vertex_count) if v != first]
    errors = []
    for a in order:
        try:
            return maximize_volume(triangulate(g, a, check=False), tol=tol, seed=seed)
        except TriangulationError as exc:
            log.warning("volume solve failed: %s; trying next apex", exc)
            errors.append(str(exc))
            if apex is not None:
                raise
    raise TriangulationError("triangulation degenerate for every apex: " + "; ".join(errors))


def ideal_volume(g: PlanarGraph, *, apex: Optional[int] = None, seed: int = 0) -> float:
    """Hyperbolic volume of the ideal right-angled polyhedron with graph ``g``."""
    return solve(g, apex=apex, seed=seed).volume


def format_volume(x: float) -> str:
    """Nine significant digits, '.' as decimal separator."""
    return f"{x:.9g}"


def tetrahedra_count(g: PlanarGraph, apex: int) -> int:
    return sum(len(f) - 2 for f in g.faces if apex not in f)


__all__: Sequence[str] = (
    "V8", "antiprism_volume", "twisted_antiprism_volume", "IdealTriangulation",
    "triangulate", "maximize_volume", "solve", "ideal_volume", "TriangulationError",
    "InvalidPolyhedronError", "format_volume", "default_apex",
)
