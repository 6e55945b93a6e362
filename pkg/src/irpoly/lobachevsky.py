"""The Lobachevsky function and ideal tetrahedron volumes."""

from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta

# sum_k zeta(2k) / (k (2k + 1)) * (x / pi)^(2k) * x; after reduction to
# |x| <= pi/2 the ratio (x/pi)^2 <= 1/4, so 30 terms reach 1e-18.
_N_TERMS = 30
_COEFFS = np.array([zeta(2 * k) / (k * (2 * k + 1)) for k in range(1, _N_TERMS + 1)])

HALF_PI = math.pi / 2


def _reduce(theta):
    # shift into [-pi/2, pi/2) using pi-periodicity
    return theta - math.pi * np.floor(theta / math.pi + 0.5)


def lobachevsky(theta):
    """Lambda(theta) = -int_0^theta log|2 sin t| dt, for scalars or arrays."""
    arr = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("lobachevsky: argument must be finite")
    x = _reduce(arr)
    ax = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        head = np.where(ax > 0, x * (1.0 - np.log(2.0 * ax)), 0.0)
    u = (x / math.pi) ** 2
    series = np.zeros_like(x)
    for c in _COEFFS[::-1]:
        series = (series + c) * u
    out = head + x * series
    if np.ndim(theta) == 0:
        return float(out)
    return out


def lobachevsky_derivative(theta):
    """Lambda'(theta) = -log|2 sin theta|."""
    return -np.log(np.abs(2.0 * np.sin(theta)))


V8 = 8.0 * lobachevsky(math.pi / 4)


def milnor_tet_volume(alpha: float, beta: float, gamma: float) -> float:
    """Volume of the ideal tetrahedron with dihedral angles alpha, beta, gamma."""
    angles = (alpha, beta, gamma)
    if min(angles) < 0:
        raise ValueError(f"dihedral angles must be non-negative, got {angles}")
    if abs(sum(angles) - math.pi) > 1e-9:
        raise ValueError(f"dihedral angles must sum to pi, got {sum(angles)!r}")
    return sum(lobachevsky(a) for a in angles)


def octahedron_volume() -> float:
    """v8, the volume of the regular ideal (right-angled) octahedron."""
    return V8
